"""Square classes, norm classes and Hilbert symbols over Q_p and R.

Classes are stored by a canonical integer representative:

* p odd: 1, u, p, u*p with u the smallest positive non-residue mod p
* p = 2: +-1, +-5, +-2, +-10
* real: +-1
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p**0.5) + 1))


def _val(x: int, p: int) -> tuple[int, int]:
    """Return (v_p(x), x / p^v)."""
    if x == 0:
        raise ValueError("zero has no square class")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v, x


def legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def smallest_nonresidue(p: int) -> int:
    return next(a for a in range(2, p) if legendre(a, p) == -1)


@dataclass(frozen=True)
class LocalFieldDesc:
    kind: str  # "p-adic" or "real"
    p: int = 0

    def __post_init__(self):
        if self.kind == "complex":
            raise ValueError("the complex field is not supported")
        if self.kind not in ("p-adic", "real"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "p-adic" and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.kind == "real" and self.p != 0:
            raise ValueError("real field takes no prime")

    @classmethod
    def qp(cls, p: int) -> "LocalFieldDesc":
        return cls("p-adic", p)

    @classmethod
    def real(cls) -> "LocalFieldDesc":
        return cls("real")

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    @cached_property
    def u(self) -> int:
        if self.kind != "p-adic" or self.p == 2:
            raise ValueError("u is defined only for odd p")
        return smallest_nonresidue(self.p)

    @cached_property
    def reps(self) -> tuple[int, ...]:
        if self.is_real:
            return (1, -1)
        if self.p == 2:
            return (1, -1, 5, -5, 2, -2, 10, -10)
        u, p = self.u, self.p
        return (1, u, p, u * p)

    def reduce(self, x: int) -> int:
        """Canonical representative of the class of the nonzero integer x."""
        if x == 0:
            raise ValueError("zero has no square class")
        if self.is_real:
            return 1 if x > 0 else -1
        v, w = _val(x, self.p)
        if self.p == 2:
            unit = {1: 1, 7: -1, 5: 5, 3: -5}[w % 8]
            return unit * (2 if v % 2 else 1)
        unit = 1 if legendre(w, self.p) == 1 else self.u
        return unit * (self.p if v % 2 else 1)

    def cls(self, x) -> "SquareClass":
        """Class from an int or a tag string ("1", "u", "p", "up", "-5", ...)."""
        if isinstance(x, SquareClass):
            if x.field != self:
                raise ValueError("square class from another field")
            return x
        if isinstance(x, str):
            if self.kind == "p-adic" and self.p != 2 and x in ("u", "p", "up"):
                x = {"u": self.u, "p": self.p, "up": self.u * self.p}[x]
            else:
                x = int(x)
        return SquareClass(self, self.reduce(int(x)))

    def to_json(self) -> dict:
        if self.is_real:
            return {"kind": "real"}
        return {"kind": "p-adic", "p": self.p}

    @classmethod
    def from_json(cls, d: dict) -> "LocalFieldDesc":
        if d.get("kind") == "real":
            return cls.real()
        return cls(d.get("kind", "p-adic"), int(d["p"]))

    def __repr__(self):
        return "R" if self.is_real else f"Q{self.p}"


@dataclass(frozen=True)
class SquareClass:
    field: LocalFieldDesc
    rep: int

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        if other.field != self.field:
            raise ValueError("mismatched fields")
        return SquareClass(self.field, self.field.reduce(self.rep * other.rep))

    def __pow__(self, k: int) -> "SquareClass":
        return self if k % 2 else SquareClass(self.field, 1)

    @property
    def is_one(self) -> bool:
        return self.rep == 1

    @property
    def tag(self) -> str:
        f = self.field
        if f.kind == "p-adic" and f.p != 2:
            return {1: "1", f.u: "u", f.p: "p", f.u * f.p: "up"}[self.rep]
        return str(self.rep)

    @property
    def index(self) -> int:
        return self.field.reps.index(self.rep)

    def __lt__(self, other):
        return self.index < other.index

    def __repr__(self):
        return f"[{self.tag}]"


def square_classes(field: LocalFieldDesc) -> list[SquareClass]:
    return [SquareClass(field, r) for r in field.reps]


def minus_one(field: LocalFieldDesc) -> SquareClass:
    return field.cls(-1)


def hilbert_symbol(field: LocalFieldDesc, a: SquareClass, b: SquareClass) -> int:
    """Closed-form Hilbert symbol (a, b)_F."""
    if a.field != field or b.field != field:
        raise ValueError("mismatched field descriptors")
    return _hilbert(field, a.rep, b.rep)


@lru_cache(maxsize=None)
def _hilbert(field: LocalFieldDesc, x: int, y: int) -> int:
    if field.is_real:
        return -1 if (x < 0 and y < 0) else 1
    p = field.p
    al, u = _val(x, p)
    be, v = _val(y, p)
    if p == 2:
        eps = lambda t: ((t - 1) // 2) % 2
        om = lambda t: ((t * t - 1) // 8) % 2
        e = eps(u) * eps(v) + al * om(v) + be * om(u)
        return -1 if e % 2 else 1
    s = -1 if (al * be * ((p - 1) // 2)) % 2 else 1
    if be % 2:
        s *= legendre(u, p)
    if al % 2:
        s *= legendre(v, p)
    return s


@dataclass(frozen=True)
class QuadExtDesc:
    """E = F(sqrt d), or E = F when d is None."""

    base: LocalFieldDesc
    d: SquareClass | None = None

    def __post_init__(self):
        if self.d is not None:
            if self.d.field != self.base:
                raise ValueError("d from another field")
            if self.d.is_one:
                raise ValueError("d must be a non-square class")

    @property
    def split(self) -> bool:
        return self.d is None

    def to_json(self) -> dict:
        return {"d": None if self.d is None else self.d.tag}

    def __repr__(self):
        return f"{self.base!r}" if self.d is None else f"{self.base!r}(sqrt {self.d.tag})"


def omega_quadratic(ext: QuadExtDesc, a: SquareClass) -> int:
    """omega_{E/F}(a) = (a, d)_F; its kernel is the norm group."""
    if ext.d is None:
        raise ValueError("omega is defined only for a proper extension")
    return hilbert_symbol(ext.base, a, ext.d)


@dataclass(frozen=True)
class NormClassGroup:
    ext: QuadExtDesc
    elements: tuple[SquareClass, ...]

    def reduce(self, a: SquareClass) -> SquareClass:
        """Canonical representative of a's class in F^x / N E^x."""
        if self.ext.d is None:
            return a
        return self.elements[0] if omega_quadratic(self.ext, a) == 1 else self.elements[1]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def norm_class_group(ext: QuadExtDesc) -> NormClassGroup:
    cl = square_classes(ext.base)
    if ext.d is None:
        return NormClassGroup(ext, tuple(cl))
    non_norm = next(c for c in cl if omega_quadratic(ext, c) == -1)
    return NormClassGroup(ext, (cl[0], non_norm))


def ext_from_json(field: LocalFieldDesc, d: dict | None) -> QuadExtDesc:
    if not d or d.get("d") is None:
        return QuadExtDesc(field)
    return QuadExtDesc(field, field.cls(str(d["d"])))
