import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import Q3, split_ctx, unitary_ctx
from descentcalc.cases import generate_random_case, random_parameter
from descentcalc.descent import legal_ell, target_group
from descentcalc.epsilon import (
    Context,
    EpsilonLookupError,
    EpsilonTable,
    eps_pair,
    eps_single,
    eps_summand_pair,
    sl2_tensor,
    validate_table,
)
from descentcalc.localfield import QuadExtDesc, square_classes
from descentcalc.lparam import Alphabet, classify_summands, normalize_summands


def test_sl2_tensor_examples():
    assert sl2_tensor(1, 5) == [5]
    assert sorted(sl2_tensor(2, 3)) == [2, 4]
    assert sorted(sl2_tensor(3, 3)) == [1, 3, 5]


@given(st.integers(1, 12), st.integers(1, 12))
def test_sl2_tensor_dimension_and_symmetry(a, b):
    assert sum(sl2_tensor(a, b)) == a * b
    assert sl2_tensor(a, b) == sl2_tensor(b, a)


def expand(table_sign: int, a: int, b: int) -> int:
    """Direct expansion: a symplectic rho (x) rho' pair contributes table^c per SL2 piece c."""
    out = 1
    for c in range(abs(a - b) + 1, a + b, 2):
        out *= table_sign**c
    return out


@pytest.mark.parametrize("sig", [1, -1])
@pytest.mark.parametrize("a,b", [(1, 1), (2, 2), (1, 3), (3, 1), (2, 4), (4, 2), (3, 3)])
def test_eps_summand_pair_matches_expansion(sig, a, b):
    ctx = split_ctx(sig=sig)
    assert eps_summand_pair(ctx, ("chi1", a), ("sig", b)) == expand(sig, a, b)


def test_eps_pair_examples():
    ctx = split_ctx(sig=-1)
    assert eps_pair(ctx, ("sig", 1), []) == 1
    assert eps_pair(ctx, ("chi1", 2), [("sig", 2, 1)]) == 1
    assert eps_pair(ctx, ("chi1", 1), [("sig", 1, 1)]) == -1
    with pytest.raises(EpsilonLookupError):
        eps_summand_pair(ctx, ("chi1", 1), ("chiu", 1))


def test_eps_single_examples():
    ctx = split_ctx(sig=-1)
    s = ("sig", 1)
    assert eps_single(ctx, s, Q3.cls(1)) == 1
    assert eps_single(ctx, s, Q3.cls("p")) == -1  # (p, -1) = -1 over Q3 and eps(sig) = eps(sig(p))
    Z = square_classes(Q3)
    for a in Z:
        for b in Z:
            assert eps_single(ctx, s, a) * eps_single(ctx, s, b) == eps_single(ctx, s, a * b)


def test_validate_table_examples():
    ext = QuadExtDesc(Q3)
    assert validate_table(Context(ext, Alphabet(ext, {}), EpsilonTable())) == []
    ctx = split_ctx()
    pairs = dict(ctx.table.pairs)
    del pairs[frozenset(("sig", "chip"))]
    bad = validate_table(Context(ctx.ext, ctx.alphabet, EpsilonTable(pairs, ctx.table.singles)))
    assert bad == ["missing pair {sig, chip}"] or bad == ["missing pair {chip, sig}"]
    pairs = dict(ctx.table.pairs)
    pairs[frozenset(("sig", "chip"))] = -1
    bad = validate_table(Context(ctx.ext, ctx.alphabet, EpsilonTable(pairs, ctx.table.singles)))
    assert bad[0] == "pair {sig, chip} disagrees with the single sign of sig"
    assert all("disagrees" in b or "not symmetric" in b for b in bad)


def test_nonregular_table_rejected():
    with pytest.raises(ValueError):
        EpsilonTable.from_json({"eps_pairs": [], "regular": False})


def test_table_json_round_trip():
    ctx = split_ctx(sig=-1, tau=("u", -1))
    t = EpsilonTable.from_json(ctx.table.to_json())
    assert t.pairs == ctx.table.pairs and t.singles == ctx.table.singles


def test_unitary_pairs_only_conjugate_symplectic_type():
    ctx = unitary_ctx(signs={"01": -1})
    assert eps_pair(ctx, ("rho0", 1), [("rho1", 1, 1)]) == -1
    assert eps_pair(ctx, ("rho0", 2), [("rho1", 2, 1)]) == 1


FAMILIES = ("SO_odd", "SO_even", "Sp", "Mp", "U")


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FAMILIES), st.integers(0, 2**32 - 1))
def test_eps_pair_multiplicative(family, seed):
    c = generate_random_case(family, seed)
    rng = np.random.Generator(np.random.PCG64(seed))
    G = c.group
    ells = [l for l in range(1, G.dim + 1) if legal_ell(G, l)]
    H = target_group(G, ells[int(rng.integers(len(ells)))])
    psi1 = random_parameter(rng, c.ctx.alphabet, H, -c.phi.sign)
    psi2 = random_parameter(rng, c.ctx.alphabet, H, -c.phi.sign)
    if psi1 is None or psi2 is None:
        return
    both = normalize_summands(list(psi1.summands) + list(psi2.summands))
    for s in classify_summands(c.ctx.alphabet, c.phi)[0]:
        assert eps_pair(c.ctx, s, both) == eps_pair(c.ctx, s, psi1) * eps_pair(c.ctx, s, psi2)
