import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descentcalc.localfield import (
    LocalFieldDesc,
    QuadExtDesc,
    hilbert_symbol,
    minus_one,
    norm_class_group,
    omega_quadratic,
    square_classes,
)
from oracles import enumerate_square_classes, hilbert_oracle, real_hilbert_oracle, same_class

PRIMES = (2, 3, 5, 7)
FIELDS = [LocalFieldDesc.qp(p) for p in PRIMES] + [LocalFieldDesc.real()]


def oracle(F, a, b):
    return real_hilbert_oracle(a, b) if F.is_real else hilbert_oracle(a, b, F.p)


def test_square_class_examples():
    assert [c.rep for c in square_classes(LocalFieldDesc.real())] == [1, -1]
    assert [c.tag for c in square_classes(LocalFieldDesc.qp(3))] == ["1", "u", "p", "up"]
    assert sorted(c.rep for c in square_classes(LocalFieldDesc.qp(2))) == [-10, -5, -2, -1, 1, 2, 5, 10]


@pytest.mark.parametrize("p", PRIMES)
def test_square_classes_match_oracle(p):
    F = LocalFieldDesc.qp(p)
    reps = [c.rep for c in square_classes(F)]
    assert len(reps) == len(enumerate_square_classes(p))
    for i, x in enumerate(reps):
        for y in reps[i + 1:]:
            assert not same_class(x, y, p)


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_hilbert_matches_oracle(F):
    for a in square_classes(F):
        for b in square_classes(F):
            assert hilbert_symbol(F, a, b) == oracle(F, a.rep, b.rep), (a, b)


def test_hilbert_examples():
    R, Q3 = LocalFieldDesc.real(), LocalFieldDesc.qp(3)
    assert hilbert_symbol(R, R.cls(-1), R.cls(-1)) == -1
    assert hilbert_symbol(Q3, Q3.cls("u"), Q3.cls("u")) == 1
    for b in square_classes(Q3):
        assert hilbert_symbol(Q3, Q3.cls(1), b) == 1


def test_omega_examples():
    F = LocalFieldDesc.qp(3)
    E = QuadExtDesc(F, F.cls("u"))
    assert omega_quadratic(E, F.cls(1)) == 1
    assert omega_quadratic(E, F.cls("p")) == hilbert_symbol(F, F.cls("p"), F.cls("u")) == -1
    for F in FIELDS:
        for d in square_classes(F)[1:]:
            E = QuadExtDesc(F, d)
            assert omega_quadratic(E, d) == hilbert_symbol(F, d, minus_one(F))


def test_norm_class_group_sizes():
    Q3, R = LocalFieldDesc.qp(3), LocalFieldDesc.real()
    assert len(norm_class_group(QuadExtDesc(Q3))) == 4
    assert len(norm_class_group(QuadExtDesc(Q3, Q3.cls("u")))) == 2
    assert len(norm_class_group(QuadExtDesc(R, R.cls(-1)))) == 2


def test_bad_extension_rejected():
    F = LocalFieldDesc.qp(5)
    with pytest.raises(ValueError):
        QuadExtDesc(F, F.cls(1))


field_st = st.sampled_from(FIELDS)
nonzero = st.integers(-500, 500).filter(bool)


@given(field_st, st.data())
def test_hilbert_symmetric_and_bimultiplicative(F, data):
    cl = square_classes(F)
    a, b, c = (data.draw(st.sampled_from(cl)) for _ in range(3))
    h = lambda x, y: hilbert_symbol(F, x, y)
    assert h(a, b) == h(b, a)
    assert h(a, b * c) == h(a, b) * h(a, c)
    assert h(a, minus_one(F) * a) == 1


@given(field_st, st.data())
def test_hilbert_nondegenerate(F, data):
    a = data.draw(st.sampled_from(square_classes(F)[1:]))
    assert any(hilbert_symbol(F, a, b) == -1 for b in square_classes(F))


@settings(max_examples=200)
@given(st.sampled_from(PRIMES), nonzero, nonzero)
def test_reduce_agrees_with_oracle_classes(p, x, y):
    F = LocalFieldDesc.qp(p)
    assert (F.cls(x) == F.cls(y)) == same_class(x, y, p)


@given(field_st, st.data())
def test_norm_classes_are_omega_kernel(F, data):
    d = data.draw(st.sampled_from(square_classes(F)[1:]))
    E = QuadExtDesc(F, d)
    Z = norm_class_group(E)
    for a in square_classes(F):
        assert (Z.reduce(a) == Z.elements[0]) == (omega_quadratic(E, a) == 1)
