"""Declared root numbers on alphabet pairs and their extension to full parameters.

A table stores epsilon(rho (x) rho') for pairs whose tensor product is
(conjugate-)symplectic and epsilon(rho) for symplectic rho.  Everything else is
derived: direct sums multiply, the SL2 factor splits by Clebsch-Gordan, and
(conjugate-)orthogonal pieces only ever enter squared, where the value is
det(-1) (E = F) or 1 (E != F).
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .localfield import QuadExtDesc, SquareClass, hilbert_symbol, minus_one, norm_class_group
from .lparam import Alphabet, Key, Parameter, summand_det, summand_dim, summand_sign


class EpsilonLookupError(KeyError):
    pass


@dataclass
class EpsilonTable:
    pairs: dict[frozenset, int] = field(default_factory=dict)
    singles: dict[str, int] = field(default_factory=dict)
    regular: bool = True

    def __post_init__(self):
        if not self.regular:
            raise ValueError("only tables without inertia invariants are supported")
        for v in list(self.pairs.values()) + list(self.singles.values()):
            if v not in (1, -1):
                raise ValueError("signs must be +1 or -1")

    def pair(self, r1: str, r2: str) -> int:
        try:
            return self.pairs[frozenset((r1, r2))]
        except KeyError:
            raise EpsilonLookupError(f"no sign for the pair {{{r1}, {r2}}}") from None

    def single(self, r: str) -> int:
        try:
            return self.singles[r]
        except KeyError:
            raise EpsilonLookupError(f"no sign for {r}") from None

    def to_json(self) -> dict:
        return {
            "eps_pairs": [sorted(k) + [v] if len(k) == 2 else [*k, *k, v] for k, v in self.pairs.items()],
            "eps_singles": [[k, v] for k, v in self.singles.items()],
            "regular": self.regular,
        }

    @classmethod
    def from_json(cls, d: dict) -> "EpsilonTable":
        pairs = {frozenset((a, b)): int(s) for a, b, s in d.get("eps_pairs", [])}
        singles = {a: int(s) for a, s in d.get("eps_singles", [])}
        return cls(pairs, singles, bool(d.get("regular", True)))


@dataclass
class Context:
    """Everything a sign computation needs: the extension, the alphabet and the table."""

    ext: QuadExtDesc
    alphabet: Alphabet
    table: EpsilonTable
    cache: dict = field(default_factory=dict, repr=False, compare=False)


def sl2_tensor(a: int, b: int) -> list[int]:
    if a < 1 or b < 1:
        raise ValueError("SL2 dimensions are positive")
    return [a + b - 1 - 2 * k for k in range(min(a, b))]


def _minus1(ctx: Context, c: SquareClass) -> int:
    """Value at -1 of the quadratic character attached to the class c."""
    F = ctx.ext.base
    return hilbert_symbol(F, c, minus_one(F))


def tensor_det(alpha: Alphabet, s: Key, x: Key) -> SquareClass:
    return summand_det(alpha, s) ** summand_dim(alpha, x) * summand_det(alpha, x) ** summand_dim(alpha, s)


def eps_summand_pair(ctx: Context, s: Key, x: Key) -> int:
    """epsilon(s (x) x) for two simple summands whose tensor is (conjugate-)symplectic."""
    key = ("pair", s, x)
    if key not in ctx.cache:
        ctx.cache[key] = _eps_summand_pair(ctx, s, x)
    return ctx.cache[key]


def _eps_summand_pair(ctx: Context, s: Key, x: Key) -> int:
    alpha = ctx.alphabet
    if summand_sign(alpha, s) * summand_sign(alpha, x) != -1:
        raise EpsilonLookupError(f"{s} (x) {x} is not of symplectic type")
    r1, r2 = alpha[s[0]], alpha[x[0]]
    t = r1.sign * r2.sign
    out = 1
    for c in sl2_tensor(s[1], x[1]):
        if t == -1:
            out *= ctx.table.pair(r1.id, r2.id) ** c
        elif ctx.ext.split:
            # rho (x) rho' orthogonal and c even: epsilon^2 = det(-1)
            d = r1.det ** r2.dim * r2.det ** r1.dim
            out *= _minus1(ctx, d) ** (c // 2)
    return out


def eps_of_summand(ctx: Context, s: Key) -> int:
    """epsilon(s) for a (conjugate-)symplectic simple summand s."""
    alpha = ctx.alphabet
    r = alpha[s[0]]
    if summand_sign(alpha, s) != -1:
        raise EpsilonLookupError(f"{s} is not of symplectic type")
    if r.sign == -1:
        return ctx.table.single(r.id) ** s[1]
    if not ctx.ext.split:
        return 1
    return _minus1(ctx, r.det) ** (s[1] // 2)


def eps_pair(ctx: Context, s: Key, psi) -> int:
    """epsilon(s (x) psi) for a simple summand s against a parameter or summand list.

    psi items are (rho, b, m).  Summands of the same type as s enter with even
    multiplicity and non-self-dual ones with their partner, so both contribute
    only through squares.
    """
    summands = psi.summands if isinstance(psi, Parameter) else tuple(tuple(x) for x in psi)
    key = ("psi", s, summands)
    if key not in ctx.cache:
        ctx.cache[key] = _eps_pair(ctx, s, summands)
    return ctx.cache[key]


def _eps_pair(ctx: Context, s: Key, summands) -> int:
    alpha = ctx.alphabet
    mults = {(r, b): m for r, b, m in summands}
    ss = summand_sign(alpha, s)
    out = 1
    for r, b, m in summands:
        x = (r, b)
        sx = summand_sign(alpha, x)
        if sx == 0:
            partner = (alpha[r].partner, b)
            if mults.get(partner) != m:
                raise ValueError(f"{r}: non-self-dual summand without its partner")
            if x < partner and ctx.ext.split:
                out *= _minus1(ctx, tensor_det(alpha, s, x)) ** m
        elif ss * sx == -1:
            out *= eps_summand_pair(ctx, s, x) ** m
        else:
            if m % 2:
                raise ValueError(f"{x}: odd multiplicity of an orthogonal-type tensor")
            if ctx.ext.split:
                out *= _minus1(ctx, tensor_det(alpha, s, x)) ** (m // 2)
    return out


def eps_single(ctx: Context, s: Key, a: SquareClass) -> int:
    """epsilon(s) epsilon(s(a)) (a, -1)^(dim s / 2) for a symplectic summand s."""
    alpha = ctx.alphabet
    d = summand_dim(alpha, s)
    if d % 2:
        raise ValueError("metaplectic summands have even dimension")
    sa = (alpha.twist_irr(s[0], a), s[1])
    F = ctx.ext.base
    return eps_of_summand(ctx, s) * eps_of_summand(ctx, sa) * hilbert_symbol(F, a, minus_one(F)) ** (d // 2)


def validate_table(ctx: Context) -> list[str]:
    alpha, table = ctx.alphabet, ctx.table
    out = []
    members = list(alpha.members.values())
    selfdual = [r for r in members if r.sign != 0]
    for key in table.pairs:
        ids = sorted(key)
        if any(i not in alpha.members for i in ids):
            out.append(f"pair {ids} names an unknown member")
            continue
        r1, r2 = alpha[ids[0]], alpha[ids[-1]]
        if r1.sign * r2.sign != -1:
            out.append(f"pair {ids} is not of symplectic type")
    for i, r1 in enumerate(selfdual):
        for r2 in selfdual[i + 1:]:
            if r1.sign * r2.sign == -1 and frozenset((r1.id, r2.id)) not in table.pairs:
                out.append(f"missing pair {{{r1.id}, {r2.id}}}")
    for r in selfdual:
        if r.sign == -1 and ctx.ext.split and r.id not in table.singles:
            out.append(f"missing single {r.id}")
    for k in table.singles:
        if k not in alpha.members or alpha[k].sign != -1:
            out.append(f"single {k} is not of symplectic type")
    if out or not ctx.ext.split:
        return out
    # with E = F: quadratic characters against rho, twist invariance, metaplectic homomorphism
    Z = list(norm_class_group(ctx.ext))
    for r in selfdual:
        if r.sign != -1:
            continue
        for z in Z:
            chi = alpha.quadratic_char(z)
            try:
                rz = alpha.twist_irr(r.id, z)
            except ValueError:
                continue
            if chi is not None and table.pair(r.id, chi) != table.single(rz):
                out.append(f"pair {{{r.id}, {chi}}} disagrees with the single sign of {rz}")
        for a in Z:
            for b in Z:
                s = (r.id, 1)
                lhs = eps_single(ctx, s, a) * eps_single(ctx, s, b)
                if lhs != eps_single(ctx, s, a * b):
                    out.append(f"{r.id}: metaplectic eta is not multiplicative at {a.tag}, {b.tag}")
    for key, v in table.pairs.items():
        x, y = sorted(key)
        for z in Z:
            try:
                xz, yz = alpha.twist_irr(x, z), alpha.twist_irr(y, z)
            except ValueError:
                continue
            if table.pairs.get(frozenset((xz, y))) is not None and \
                    table.pairs.get(frozenset((x, yz))) is not None and \
                    table.pair(xz, y) != table.pair(x, yz):
                out.append(f"twisting {{{x}, {y}}} by {z.tag} is not symmetric")
    return out
