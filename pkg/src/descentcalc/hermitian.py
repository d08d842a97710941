"""Invariant-level epsilon-Hermitian spaces, relevant pairs and [p1, 1^(n-p1)] orbits.

Spaces are never given by Gram matrices.  The stored invariants are

* quadratic (E = F, eps = +1): dim, disc = (-1)^(n(n-1)/2) det, hasse = prod_{i<j} (a_i, a_j)
  of any diagonalization <a_1, ..., a_n>;
* symplectic (E = F, eps = -1): dim only;
* Hermitian or skew-Hermitian (E != F): dim and disc in F^x / N E^x.  A skew-Hermitian
  form q is recorded through its Hermitian twin delta * q.

Only p-adic fields are classified; real quadratic and Hermitian forms need the
signature, which this package does not model.  Symplectic spaces work over any field.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .localfield import (
    LocalFieldDesc,
    NormClassGroup,
    QuadExtDesc,
    SquareClass,
    hilbert_symbol,
    minus_one,
    norm_class_group,
    square_classes,
)

FAMILIES = ("SO_odd", "SO_even", "Sp", "Mp", "U")


def _sign_pow(n: int) -> int:
    """Exponent n(n-1)/2 mod 2."""
    return (n * (n - 1) // 2) % 2


def _hil(F, a, b):
    return hilbert_symbol(F, a, b)


# ---------------------------------------------------------------- quadratic forms

def orth_realizable(F: LocalFieldDesc, n: int, det: SquareClass, hasse: int) -> bool:
    one = F.cls(1)
    if n == 0:
        return det == one and hasse == 1
    if n == 1:
        return hasse == 1
    if n == 2:
        return not (det == minus_one(F) and hasse == -1)
    return True


def orth_isotropic(F: LocalFieldDesc, n: int, det: SquareClass, hasse: int) -> bool:
    m1 = minus_one(F)
    if n <= 1:
        return False
    if n == 2:
        return (m1 * det).is_one
    if n == 3:
        return hasse == _hil(F, m1, m1 * det)
    if n == 4:
        return (not det.is_one) or hasse == _hil(F, m1, m1)
    return True


def _orth_split_off(F, n, det, hasse):
    """Invariants of W with V = H + W."""
    m1 = minus_one(F)
    dw = m1 * det
    return n - 2, dw, hasse * _hil(F, m1, dw)


def _orth_add_hyp(F, n, det, hasse):
    m1 = minus_one(F)
    return n + 2, m1 * det, hasse * _hil(F, m1, det)


# ---------------------------------------------------------------- spaces

@dataclass(frozen=True)
class EpsHermSpace:
    ext: QuadExtDesc
    epsilon: int
    dim: int
    disc: SquareClass | None
    hasse: int | None
    witt: int

    @property
    def field(self) -> LocalFieldDesc:
        return self.ext.base

    @property
    def d0(self) -> int:
        return self.dim - 2 * self.witt

    @property
    def kind(self) -> str:
        if not self.ext.split:
            return "hermitian" if self.epsilon == 1 else "skew-hermitian"
        return "quadratic" if self.epsilon == 1 else "symplectic"

    @property
    def unitary(self) -> bool:
        return not self.ext.split

    @property
    def det(self) -> SquareClass | None:
        if self.disc is None:
            return None
        sign = minus_one(self.field) ** _sign_pow(self.dim)
        d = sign * self.disc
        return norm_class_group(self.ext).reduce(d) if self.unitary else d

    def invariants(self) -> dict:
        return {"epsilon": self.epsilon, "dim": self.dim,
                "disc": None if self.disc is None else self.disc.tag,
                "hasse": self.hasse}

    def to_json(self) -> dict:
        d = self.invariants()
        d["witt"] = self.witt
        d["d0"] = self.d0
        return d


def _zgroup(ext) -> NormClassGroup:
    return norm_class_group(ext)


def classify(ext: QuadExtDesc, epsilon: int, dim: int, disc=None, hasse=None) -> EpsHermSpace:
    """Build the unique space with the given invariants, or raise ValueError."""
    F = ext.base
    if epsilon not in (1, -1) or dim < 0:
        raise ValueError("bad epsilon or dimension")
    if ext.split and epsilon == -1:
        if dim % 2:
            raise ValueError("symplectic spaces have even dimension")
        if disc is not None and not F.cls(disc).is_one or hasse not in (None, 1):
            raise ValueError("symplectic spaces carry no disc or hasse invariant")
        return EpsHermSpace(ext, -1, dim, None, None, dim // 2)
    if F.is_real:
        raise ValueError("real quadratic and Hermitian spaces are classified by signature; not modeled")
    if ext.split:
        if disc is None:
            if dim:
                raise ValueError("quadratic spaces need a discriminant")
            disc = 1
        disc = F.cls(disc)
        hasse = 1 if hasse is None and dim <= 1 else hasse
        if hasse not in (1, -1):
            raise ValueError("quadratic spaces need a hasse sign")
        det = minus_one(F) ** _sign_pow(dim) * disc
        if not orth_realizable(F, dim, det, hasse):
            raise ValueError(f"no quadratic space with dim={dim}, disc={disc.tag}, hasse={hasse}")
        r, n, d, h = 0, dim, det, hasse
        while orth_isotropic(F, n, d, h):
            n, d, h = _orth_split_off(F, n, d, h)
            r += 1
        return EpsHermSpace(ext, 1, dim, disc, hasse, r)
    if hasse not in (None, 1):
        raise ValueError("Hermitian spaces carry no hasse invariant")
    Z = _zgroup(ext)
    disc = Z.reduce(F.cls(1 if disc is None else disc))
    if dim == 0 and not disc.is_one:
        raise ValueError("the zero space has trivial discriminant")
    if dim % 2:
        r = (dim - 1) // 2
    else:
        r = dim // 2 if disc.is_one else dim // 2 - 1
    return EpsHermSpace(ext, epsilon, dim, disc, None, r)


def from_det(ext, epsilon, dim, det, hasse=None) -> EpsHermSpace:
    if det is None:
        return classify(ext, epsilon, dim)
    disc = minus_one(ext.base) ** _sign_pow(dim) * det
    return classify(ext, epsilon, dim, disc, hasse)


def zero_space(ext, epsilon) -> EpsHermSpace:
    return classify(ext, epsilon, 0)


def line(ext, epsilon, value: SquareClass) -> EpsHermSpace:
    """One-dimensional space <value>; for E != F, value is the Hermitian-twin class."""
    if ext.split and epsilon == -1:
        raise ValueError("no one-dimensional symplectic space")
    return from_det(ext, epsilon, 1, value, 1 if ext.split else None)


def hyperbolic(ext, epsilon, k: int = 1) -> EpsHermSpace:
    sp = zero_space(ext, epsilon)
    for _ in range(k):
        sp = add_hyperbolic(sp)
    return sp


def add_hyperbolic(space: EpsHermSpace, k: int = 1) -> EpsHermSpace:
    sp = space
    for _ in range(k):
        if sp.kind == "symplectic":
            sp = EpsHermSpace(sp.ext, -1, sp.dim + 2, None, None, sp.witt + 1)
        elif sp.kind == "quadratic":
            n, d, h = _orth_add_hyp(sp.field, sp.dim, sp.det, sp.hasse)
            sp = from_det(sp.ext, 1, n, d, h)
        else:
            m1 = minus_one(sp.field)
            sp = from_det(sp.ext, sp.epsilon, sp.dim + 2, m1 * sp.det)
    return sp


def direct_sum(a: EpsHermSpace, b: EpsHermSpace) -> EpsHermSpace:
    if (a.ext, a.epsilon) != (b.ext, b.epsilon):
        raise ValueError("summands of different kinds")
    if a.kind == "symplectic":
        return classify(a.ext, -1, a.dim + b.dim)
    det = a.det * b.det
    if a.kind == "quadratic":
        h = a.hasse * b.hasse * hilbert_symbol(a.field, a.det, b.det)
        return from_det(a.ext, 1, a.dim + b.dim, det, h)
    return from_det(a.ext, a.epsilon, a.dim + b.dim, det)


def witt_decompose(space: EpsHermSpace) -> tuple[int, EpsHermSpace]:
    """(r, anisotropic kernel)."""
    r = space.witt
    if space.kind == "symplectic":
        return r, zero_space(space.ext, -1)
    if space.kind == "quadratic":
        n, d, h = space.dim, space.det, space.hasse
        for _ in range(r):
            n, d, h = _orth_split_off(space.field, n, d, h)
        return r, from_det(space.ext, 1, n, d, h)
    m1 = minus_one(space.field)
    return r, from_det(space.ext, space.epsilon, space.d0, (m1 ** r) * space.det)


def remove_hyperbolic(space: EpsHermSpace, k: int) -> EpsHermSpace:
    if k > space.witt:
        raise ValueError("not enough hyperbolic planes")
    if space.kind == "symplectic":
        return classify(space.ext, -1, space.dim - 2 * k)
    if space.kind == "quadratic":
        n, d, h = space.dim, space.det, space.hasse
        for _ in range(k):
            n, d, h = _orth_split_off(space.field, n, d, h)
        return from_det(space.ext, 1, n, d, h)
    return from_det(space.ext, space.epsilon, space.dim - 2 * k,
                    minus_one(space.field) ** k * space.det)


def all_spaces(ext: QuadExtDesc, epsilon: int, dim: int) -> list[EpsHermSpace]:
    """Every isometry class of the given kind and dimension."""
    if ext.split and epsilon == -1:
        return [classify(ext, -1, dim)] if dim % 2 == 0 else []
    out = []
    if ext.split:
        for c in square_classes(ext.base):
            for h in (1, -1):
                try:
                    out.append(classify(ext, 1, dim, c, h))
                except ValueError:
                    pass
    else:
        for c in _zgroup(ext):
            try:
                out.append(classify(ext, epsilon, dim, c))
            except ValueError:
                pass
    return out


# ---------------------------------------------------------------- groups

@dataclass(frozen=True)
class GroupDesc:
    family: str
    dim: int  # dimension of the underlying space V
    ext: QuadExtDesc
    space: EpsHermSpace | None = None
    unitary_epsilon: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family}")
        if self.dim < 0:
            raise ValueError("negative dimension")
        if (self.family == "U") == self.ext.split:
            raise ValueError("unitary groups need E != F and conversely")
        if self.family == "SO_odd" and self.dim % 2 == 0:
            raise ValueError("SO_odd needs odd dimension")
        if self.family in ("SO_even", "Sp", "Mp") and self.dim % 2:
            raise ValueError(f"{self.family} needs even dimension")
        if self.space is not None and self.space.dim != self.dim:
            raise ValueError("space dimension mismatch")

    @property
    def epsilon(self) -> int:
        if self.family in ("SO_odd", "SO_even"):
            return 1
        if self.family in ("Sp", "Mp"):
            return -1
        return self.unitary_epsilon

    @property
    def trivial(self) -> bool:
        return self.dim == 0 or (self.family == "SO_odd" and self.dim == 1)

    @property
    def rank(self) -> int:
        return self.dim // 2

    @property
    def quasi_split(self) -> bool:
        """For odd unitary groups both forms have maximal Witt index; disc 1 is the designated one."""
        return self.space is None or self.space == quasi_split_space(self)

    def with_space(self, space) -> "GroupDesc":
        return replace(self, space=space)

    def label(self) -> str:
        return f"{self.family}({self.dim})"

    def to_json(self) -> dict:
        d = {"family": self.family, "dim": self.dim}
        if self.space is not None:
            d["space"] = self.space.invariants()
        return d


def quasi_split_space(G: GroupDesc, disc=None) -> EpsHermSpace:
    """The quasi-split space for G; SO_even keeps G's discriminant when it has one."""
    ext, n = G.ext, G.dim
    if G.family in ("Sp", "Mp"):
        return classify(ext, -1, n)
    if G.ext.base.is_real:
        raise ValueError("real quadratic and Hermitian spaces are not modeled")
    if disc is None and G.space is not None:
        disc = G.space.disc
    if G.family == "U":
        return classify(ext, G.epsilon, n, 1)
    if disc is None:
        disc = ext.base.cls(1)
    cands = [s for s in all_spaces(ext, 1, n) if s.disc == ext.base.cls(disc)]
    return max(cands, key=lambda s: (s.witt, s.hasse))


def pure_inner_forms(G: GroupDesc) -> list[GroupDesc]:
    """All forms with the same family, dimension (and disc for orthogonal groups)."""
    if G.family in ("Sp", "Mp"):
        return [G.with_space(classify(G.ext, -1, G.dim))]
    qs = quasi_split_space(G)
    if G.family == "U":
        spaces = all_spaces(G.ext, G.epsilon, G.dim)
    else:
        spaces = [s for s in all_spaces(G.ext, 1, G.dim) if s.disc == qs.disc]
    return [G.with_space(s) for s in spaces]


def legal_p1_parity(G: GroupDesc, p1: int) -> bool:
    if G.family in ("SO_odd", "SO_even"):
        return p1 % 2 == 1
    if G.family in ("Sp", "Mp"):
        return p1 % 2 == 0
    return True


def relevant_pair(G: GroupDesc, p1: int) -> GroupDesc:
    """Quasi-split H for the orbit [p1, 1^(n-p1)]."""
    if not 0 < p1 <= G.dim:
        raise ValueError("p1 out of range")
    if not legal_p1_parity(G, p1):
        raise ValueError(f"p1={p1} has illegal parity for {G.family}")
    m = G.dim - p1
    if G.family in ("SO_odd", "SO_even"):
        fam = "SO_odd" if m % 2 else "SO_even"
    elif G.family == "Sp":
        fam = "Mp"
    elif G.family == "Mp":
        fam = "Sp"
    else:
        fam = "U"
    return GroupDesc(fam, m, G.ext, unitary_epsilon=G.epsilon)


def orbit_admissible(G: GroupDesc, p1: int) -> bool:
    """The four admissibility rules for the stable orbit [p1, 1^(n-p1)]."""
    n = G.dim
    if not 0 < p1 <= n:
        return False
    if G.family in ("Sp", "Mp"):
        return p1 % 2 == 0
    r = (G.space.witt if G.space is not None else _qs_witt(G))
    if G.family == "U":
        return p1 <= 2 * r + 1
    if p1 % 2 == 0:
        return False
    return p1 <= (2 * r - 1 if n == 2 * r else 2 * r + 1)


def _qs_witt(G: GroupDesc) -> int:
    """Witt index of the quasi-split form, field independent."""
    if G.family == "SO_even":
        return G.dim // 2  # split when no disc is specified
    return G.dim // 2


# ---------------------------------------------------------------- orbits

@dataclass(frozen=True)
class OrbitData:
    p1: int
    m: int
    line_class: SquareClass
    descended_space: EpsHermSpace

    def to_json(self) -> dict:
        return {"p1": self.p1, "m": self.m, "line_class": self.line_class.tag,
                "descended_space": self.descended_space.invariants()}


def p1_block(space: EpsHermSpace, p1: int, line_class: SquareClass) -> EpsHermSpace:
    """Invariants of line (x) q_{p1}: m hyperbolic planes plus <(-1)^m line> when p1 is odd."""
    m = p1 // 2
    H = hyperbolic(space.ext, space.epsilon, m)
    if p1 % 2 == 0:
        return H
    c = minus_one(space.field) ** m * line_class
    if space.unitary:
        c = _zgroup(space.ext).reduce(c)
    return direct_sum(H, line(space.ext, space.epsilon, c))


def rational_orbits(space: EpsHermSpace, p1: int) -> list[OrbitData]:
    """One OrbitData per class of the line form q'_{e, s}."""
    n, m = space.dim, p1 // 2
    F = space.field
    if not 0 < p1 <= n:
        raise ValueError("p1 out of range")
    if space.kind == "symplectic":
        if p1 % 2:
            raise ValueError("p1 must be even for symplectic spaces")
        W = classify(space.ext, -1, n - p1)
        return [OrbitData(p1, m, c, W) for c in square_classes(F)]
    r = space.witt
    if space.kind == "quadratic":
        if p1 % 2 == 0 or p1 > (2 * r - 1 if n == 2 * r else 2 * r + 1):
            raise ValueError("orbit not admissible")
    elif p1 > 2 * r + 1:
        raise ValueError("orbit not admissible")
    if p1 % 2 == 0:  # unitary, even p1: V_(p1) is split
        W = remove_hyperbolic(space, m)
        return [OrbitData(p1, m, c, W) for c in _zgroup(space.ext)]
    V0 = remove_hyperbolic(space, m)
    sign = minus_one(F) ** m
    out = []
    classes = square_classes(F) if space.kind == "quadratic" else list(_zgroup(space.ext))
    for c in classes:  # c = <e, e>
        if space.kind == "quadratic":
            dw = V0.det * c
            hw = V0.hasse * hilbert_symbol(F, c, dw)
            if not orth_realizable(F, n - p1, dw, hw):
                continue
            W = from_det(space.ext, 1, n - p1, dw, hw)
            lc = sign * c
        else:
            if V0.dim == 1 and c != V0.det:
                continue
            W = from_det(space.ext, space.epsilon, n - p1, _zgroup(space.ext).reduce(V0.det * c))
            lc = _zgroup(space.ext).reduce(sign * c)
        out.append(OrbitData(p1, m, lc, W))
    return out


def space_from_json(ext: QuadExtDesc, d: dict) -> EpsHermSpace:
    return classify(ext, int(d["epsilon"]), int(d["dim"]), d.get("disc"), d.get("hasse"))
