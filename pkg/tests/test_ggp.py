import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import Q3, param, split_ctx, unitary_ctx
from descentcalc.cases import generate_random_case, random_parameter
from descentcalc.descent import legal_ell, target_group
from descentcalc.ggp import chi, chi_twisted, distinguished_pair, eta, multiplicity_tempered
from descentcalc.hermitian import GroupDesc
from descentcalc.localfield import norm_class_group, square_classes
from descentcalc.lparam import EnhancedParameter, Parameter, component_group, twist

FAMILIES = ("SO_odd", "SO_even", "Sp", "Mp", "U")


def test_eta_examples():
    ctx = split_ctx()
    phi = param(ctx, "Sp", 4, [("chi1", 1, 1), ("chiu", 1, 1), ("chiu", 3, 1)])
    S = component_group(ctx.alphabet, phi)
    assert eta(ctx, phi, Q3.cls(1)) == S.trivial()
    assert eta(ctx, phi, Q3.cls("p")).values == (1, -1, -1)  # (u, p) = -1 over Q3
    so = param(ctx, "SO_odd", 5, [("sig", 1, 1), ("chiu", 2, 1)])
    for a in square_classes(Q3):
        assert eta(ctx, so, a) == component_group(ctx.alphabet, so).trivial()
    uctx = unitary_ctx()
    phi = param(uctx, "U", 3, [("rho2", 1, 1), ("rho0", 1, 1)], sign=1)
    for a in norm_class_group(uctx.ext):
        assert eta(uctx, phi, a).as_dict()["rho2⊗μ1"] == 1


def test_chi_examples():
    ctx = split_ctx(tau=("u", -1))
    phi = param(ctx, "SO_odd", 3, [("sig", 1, 1)])
    empty = Parameter((), GroupDesc("SO_even", 0, ctx.ext), 1)
    assert chi(ctx, phi, empty) == component_group(ctx.alphabet, phi).trivial()
    psi = param(ctx, "SO_even", 2, [("tau", 1, 1)])
    assert chi(ctx, phi, psi).values == (-1,)
    ctx = split_ctx(sig=1, tau=("1", 1))
    phi = param(ctx, "SO_odd", 5, [("sig", 1, 1), ("chi1", 2, 1)])
    psi = param(ctx, "SO_even", 4, [("tau", 1, 1), ("chi1", 1, 2)])
    assert chi(ctx, phi, psi) == component_group(ctx.alphabet, phi).trivial()


def test_chi_twisted_orthogonal_z_one():
    ctx = split_ctx(tau=("u", -1))
    phi = param(ctx, "SO_odd", 3, [("sig", 1, 1)])
    psi = param(ctx, "SO_even", 2, [("tau", 1, 1)])
    assert chi_twisted(ctx, phi, psi, Q3.cls(1)) == (chi(ctx, phi, psi), chi(ctx, psi, phi))


def test_chi_twisted_symplectic_uses_twisted_phi():
    ctx = split_ctx(sig=-1)
    phi = param(ctx, "Sp", 2, [("chiu", 1, 1), ("chip", 1, 1), ("chiup", 1, 1)])
    psi = param(ctx, "Mp", 2, [("sig", 1, 1)])
    z = Q3.cls("u")
    phz, mapping = twist(ctx.alphabet, phi, z)
    S = component_group(ctx.alphabet, phi)
    c = chi(ctx, phz, psi)
    back = c.transport({v: k for k, v in mapping.items()}, S.basis) * eta(ctx, phi, z)
    mu, nu = chi_twisted(ctx, phi, psi, z)
    assert S.same(mu, back)
    assert nu == component_group(ctx.alphabet, psi).canonical(chi(ctx, psi, phz))


def test_chi_twisted_unitary_even_ell():
    ctx = unitary_ctx(signs={"01": -1, "12": -1})
    phi = param(ctx, "U", 3, [("rho2", 1, 1), ("rho0", 1, 1)], sign=1)
    psi = param(ctx, "U", 1, [("rho1", 1, 1)], sign=-1)
    z = norm_class_group(ctx.ext).elements[1]
    Spsi = component_group(ctx.alphabet, psi)
    nu = chi_twisted(ctx, phi, psi, z)[1]
    assert nu == Spsi.canonical(chi(ctx, psi, phi) * eta(ctx, psi, z))


def test_trivial_psi_at_ell_n():
    ctx = split_ctx()
    phi = param(ctx, "Sp", 2, [("chiu", 1, 1), ("chip", 1, 1), ("chiup", 1, 1)])
    empty = Parameter((), GroupDesc("Mp", 0, ctx.ext), -1)
    S = component_group(ctx.alphabet, phi)
    for z in square_classes(Q3):
        mu, nu = chi_twisted(ctx, phi, empty, z)
        assert S.same(mu, eta(ctx, phi, z)) and nu.basis == ()


def _pair(family, seed):
    c = generate_random_case(family, seed)
    rng = np.random.Generator(np.random.PCG64(seed ^ 0x5EED))
    G = c.group
    ells = [l for l in range(1, G.dim + 1) if legal_ell(G, l)]
    ell = ells[int(rng.integers(len(ells)))]
    psi = random_parameter(rng, c.ctx.alphabet, target_group(G, ell), -c.phi.sign)
    return c, psi


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(0, 2**32 - 1))
def test_exactly_one_pair_per_z(family, seed):
    c, psi = _pair(family, seed)
    if psi is None:
        return
    ctx = c.ctx
    chars1 = component_group(ctx.alphabet, c.phi).characters()
    chars2 = component_group(ctx.alphabet, psi).characters()
    for z in norm_class_group(ctx.ext):
        total = sum(multiplicity_tempered(ctx, EnhancedParameter(c.phi, m), EnhancedParameter(psi, n), z)
                    for m in chars1 for n in chars2)
        assert total == 1
        d = distinguished_pair(ctx, c.phi, psi, z)
        assert multiplicity_tempered(ctx, EnhancedParameter(c.phi, d.mu), EnhancedParameter(psi, d.nu), z) == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(("SO_odd", "SO_even")), st.integers(0, 2**32 - 1))
def test_distinct_eta_gives_distinct_pairs(family, seed):
    c, psi = _pair(family, seed)
    if psi is None:
        return
    ctx = c.ctx
    S = component_group(ctx.alphabet, c.phi)
    Z = list(norm_class_group(ctx.ext))
    for z in Z:
        for w in Z:
            if not S.same(eta(ctx, c.phi, z), eta(ctx, c.phi, w)):
                a, b = distinguished_pair(ctx, c.phi, psi, z), distinguished_pair(ctx, c.phi, psi, w)
                assert not S.same(a.mu, b.mu)
