import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import Q3, param, split_ctx
from descentcalc.cases import generate_random_case
from descentcalc.descent import DescentConfig, descend, first_occurrence, legal_ell
from descentcalc.ggp import eta, multiplicity_tempered
from descentcalc.hermitian import GroupDesc, orbit_admissible
from descentcalc.localfield import square_classes
from descentcalc.lparam import EnhancedParameter, component_group, is_discrete
from descentcalc.spectrum import (
    PacketEntry,
    SpectrumConfig,
    StandardModuleData,
    first_descent_spectrum,
    multiplicity,
    normalized,
    rebase,
    spectral_first_occurrence,
    spectrum_at,
    submodule_witness,
    tempered_parameters,
    vogan_packet,
)

FAMILIES = ("SO_odd", "SO_even", "Sp", "Mp", "U")


def test_vogan_packet_sizes():
    ctx = split_ctx()
    single = param(ctx, "Sp", 2, [("chi1", 3, 1)])
    assert len(vogan_packet(ctx, single)) == 1
    phi = param(ctx, "Sp", 4, [("chi1", 1, 1), ("chiu", 1, 1), ("chiu", 3, 1)])
    packet = vogan_packet(ctx, phi)
    assert len(packet) == 4 and sum(e.form == "quasi-split" for e in packet) == 1


def test_rebase_relabels_by_eta():
    ctx = split_ctx()
    phi = param(ctx, "Sp", 4, [("chi1", 1, 1), ("chiu", 1, 1), ("chiu", 3, 1)])
    S = component_group(ctx.alphabet, phi)
    for e in vogan_packet(ctx, phi, Q3.cls("u")):
        for a in square_classes(Q3):
            r = rebase(ctx, e, a)
            assert S.same(r.mu, e.mu * eta(ctx, phi, Q3.cls("u") * a))
            assert S.same(rebase(ctx, r, Q3.cls("u")).mu, e.mu)


def test_multiplicity_reduction_examples():
    ctx = split_ctx(sig=-1)
    phi = param(ctx, "Sp", 4, [("chi1", 1, 1), ("chiu", 1, 1), ("chiu", 3, 1)])
    psi = param(ctx, "Mp", 2, [("sig", 1, 1)])
    z = Q3.cls("p")
    values = []
    for mu in component_group(ctx.alphabet, phi).characters():
        for nu in component_group(ctx.alphabet, psi).characters():
            pi, s0 = EnhancedParameter(phi, mu), EnhancedParameter(psi, nu)
            m = multiplicity(ctx, pi, s0, 2, z)
            assert m == multiplicity_tempered(ctx, pi, s0, z)
            sigma = StandardModuleData((0.5,), (("tau", 1),), s0)
            pi_std = StandardModuleData((1.0,), (("tau", 1),), pi)
            assert multiplicity(ctx, pi_std, sigma, 2, z) == m
            assert multiplicity(ctx, pi_std, s0, 4, z) == m
            values.append(m)
    assert sorted(values) == [0] * (len(values) - 1) + [1]
    with pytest.raises(ValueError):
        multiplicity(ctx, pi, s0, 4, z)


def test_standard_module_validation():
    ctx = split_ctx()
    s0 = EnhancedParameter(param(ctx, "Mp", 2, [("sig", 1, 1)]),
                           component_group(ctx.alphabet, param(ctx, "Mp", 2, [("sig", 1, 1)])).trivial())
    with pytest.raises(ValueError):
        StandardModuleData((0.5, 1.0), (("a", 1), ("b", 1)), s0)
    with pytest.raises(ValueError):
        StandardModuleData((0.5,), (), s0)
    assert StandardModuleData((1.0, 0.5), (("a", 1), ("b", 2)), s0).group_dim == 8


def test_tempered_parameters_valid():
    ctx = split_ctx(tau=("u", 1))
    H = GroupDesc("SO_even", 4, ctx.ext)
    params = tempered_parameters(ctx, H, 1, SpectrumConfig())
    assert params and len({p.summands for p in params}) == len(params)


def _case(family, seed):
    return generate_random_case(family, seed, max_dim=5)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(0, 2**32 - 1))
def test_spectrum_at_n_matches_descent_at_n(family, seed):
    c = _case(family, seed)
    n = c.group.dim
    if not (orbit_admissible(c.group, n) and legal_ell(c.group, n)):
        return
    entry = PacketEntry(c.phi, c.enhanced().mu, c.field.cls(1))
    S = spectrum_at(c.ctx, entry, n)
    D = descend(c.ctx, normalized(c.ctx, entry), n, DescentConfig(8, 12, "all-bounded"))
    assert bool(S) == bool(D)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(0, 2**32 - 1))
def test_spectral_first_occurrence_agrees_and_is_maximal(family, seed):
    c = _case(family, seed)
    entry = PacketEntry(c.phi, c.enhanced().mu, c.field.cls(1))
    occ = spectral_first_occurrence(c.ctx, entry)
    fo = first_occurrence(c.ctx, c.enhanced(), DescentConfig())
    assert occ.f_s == fo.ell0
    if occ.f_s is None:
        return
    for p1 in range(occ.f_s + 1, c.group.dim + 1):
        if orbit_admissible(c.group, p1):
            assert not spectrum_at(c.ctx, entry, p1)
    fds = first_descent_spectrum(c.ctx, entry)
    assert fds.violations == []
    assert all(is_discrete(c.ctx.alphabet, m.sigma0.phi) and m.p0 == 0 for _, m in fds.result.members)
    assert fds.result.keys() == fo.descent.keys()
    p1, orbit, z, sigma = submodule_witness(c.ctx, entry)
    assert p1 == fo.ell0 and orbit_admissible(c.group, p1)
    assert (z.rep, sigma.key()) in fds.result.keys()
