"""Case files: JSON schema, loading, and the seeded random case generator.

Random draws use numpy's PCG64 bit generator seeded with the case seed, so a
seed reproduces the same case on every platform.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .epsilon import Context, EpsilonTable, validate_table
from .hermitian import GroupDesc, space_from_json
from .localfield import LocalFieldDesc, QuadExtDesc, ext_from_json, hilbert_symbol, square_classes
from .lparam import (
    Alphabet,
    EnhancedParameter,
    FormalIrr,
    Parameter,
    component_group,
    enhanced,
    normalize_summands,
    param_dim,
    param_sign,
    parameter_violations,
    summand_dim,
    summand_sign,
)

SCHEMA = 1
FAMILY_DIMS = {"SO_odd": (3, 5, 7), "SO_even": (2, 4, 6), "Sp": (2, 4, 6), "Mp": (2, 4, 6), "U": (1, 2, 3, 4, 5)}
PRIMES = (2, 3, 5, 7)


class CaseError(ValueError):
    """Malformed case input."""


@dataclass
class CaseFile:
    ctx: Context
    group: GroupDesc
    phi: Parameter
    mu: dict
    whittaker: str = "1"
    search: dict = field(default_factory=lambda: {"max_summands": 8, "max_b": 12})
    seed: int | None = None

    @property
    def field(self) -> LocalFieldDesc:
        return self.ctx.ext.base

    def enhanced(self) -> EnhancedParameter:
        return enhanced(self.ctx.alphabet, self.phi, self.mu)

    def whittaker_class(self):
        return self.field.cls(self.whittaker)

    def to_json(self) -> dict:
        d = {
            "schema": SCHEMA,
            "field": self.field.to_json(),
            "ext": self.ctx.ext.to_json(),
            "alphabet": self.ctx.alphabet.to_json(),
            **self.ctx.table.to_json(),
            "group": self.group.to_json() | ({"epsilon": self.group.unitary_epsilon} if self.group.family == "U" else {}),
            "parameter": {**self.phi.to_json(), "generic": self.phi.generic},
            "mu": {"chi": self.enhanced().mu.as_dict()},
            "whittaker": self.whittaker,
            "search": dict(self.search),
        }
        if self.seed is not None:
            d["seed"] = self.seed
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False)


def load_case(d: dict) -> CaseFile:
    try:
        if d.get("schema") != SCHEMA:
            raise CaseError(f"unsupported schema {d.get('schema')!r}")
        F = LocalFieldDesc.from_json(d["field"])
        ext = ext_from_json(F, d.get("ext"))
        alpha = Alphabet.from_json(ext, d["alphabet"])
        table = EpsilonTable.from_json(d)
        ctx = Context(ext, alpha, table)
        g = d["group"]
        space = None
        if g.get("space"):
            space = space_from_json(ext, g["space"])
        group = GroupDesc(g["family"], int(g["dim"]), ext, space, int(g.get("epsilon", 1)))
        p = d["parameter"]
        phi = Parameter(normalize_summands(p["summands"]), group,
                        int(p.get("sign", param_sign(group.family, group.dim))), bool(p.get("generic", True)))
    except CaseError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise CaseError(f"malformed case: {e}") from e
    bad = alpha.validate() + validate_table(ctx) + parameter_violations(alpha, phi)
    if bad:
        raise CaseError("; ".join(bad))
    mu = d.get("mu", {})
    if isinstance(mu, dict) and "chi" in mu:
        mu = mu["chi"]
    return CaseFile(ctx, group, phi, mu, str(d.get("whittaker", "1")),
                    dict(d.get("search", {"max_summands": 8, "max_b": 12})), d.get("seed"))


# ---------------------------------------------------------------- random cases

def random_alphabet(rng: np.random.Generator, ext: QuadExtDesc) -> tuple[Alphabet, EpsilonTable]:
    """A twist-closed alphabet with a declared sign table.

    E = F: all quadratic characters, one or two symplectic planes (each fixed by
    twists, or swapped with a partner by the twists outside the kernel of a
    quadratic character), optionally an orthogonal plane, and a pad pair.
    E != F: two to four conjugate-self-dual members of random sign and a pad pair.
    """
    F = ext.base
    members: dict[str, FormalIrr] = {}
    twists: dict = {}
    pairs: dict = {}
    singles: dict = {}
    one = F.cls(1)
    if ext.split:
        Z = square_classes(F)
        for c in Z:
            members[f"chi{c.tag}"] = FormalIrr(f"chi{c.tag}", 1, "orthogonal", c)
            for z in Z:
                twists[(f"chi{c.tag}", z.rep)] = f"chi{(c * z).tag}"
        sym = []
        for i in range(int(rng.integers(1, 3))):
            if rng.random() < 0.5 or len(Z) == 1:
                names = [f"sig{i}"]
                members[names[0]] = FormalIrr(names[0], 2, "symplectic", one)
            else:
                w = Z[int(rng.integers(1, len(Z)))]
                names = [f"sig{i}a", f"sig{i}b"]
                for nm in names:
                    members[nm] = FormalIrr(nm, 2, "symplectic", one)
                for z in Z:
                    if hilbert_symbol(F, z, w) == -1:
                        twists[(names[0], z.rep)] = names[1]
                        twists[(names[1], z.rep)] = names[0]
            for nm in names:
                singles[nm] = int(rng.choice((1, -1)))
            sym.append(names)
        orth = []
        if rng.random() < 0.5:
            d = Z[int(rng.integers(len(Z)))]
            members["tau"] = FormalIrr("tau", 2, "orthogonal", d)
            orth.append("tau")
        for names in sym:
            for t in orth:
                s = int(rng.choice((1, -1)))  # twist symmetry forces one sign per orbit
                for nm in names:
                    pairs[frozenset((nm, t))] = s
            for nm in names:
                for c in Z:
                    target = twists.get((nm, c.rep), nm)
                    pairs[frozenset((nm, f"chi{c.tag}"))] = singles[target]
        members["xi"] = FormalIrr("xi", 1, "nsd", one, partner="xiv")
        members["xiv"] = FormalIrr("xiv", 1, "nsd", one, partner="xi")
    else:
        k = int(rng.integers(2, 5))
        ids = []
        for i in range(k):
            dim = int(rng.choice((1, 1, 2)))
            dual = "conj-orth" if rng.random() < 0.5 else "conj-symp"
            members[f"rho{i}"] = FormalIrr(f"rho{i}", dim, dual)
            ids.append(f"rho{i}")
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                if members[a].sign * members[b].sign == -1:
                    pairs[frozenset((a, b))] = int(rng.choice((1, -1)))
        members["xi"] = FormalIrr("xi", 1, "nsd", partner="xic")
        members["xic"] = FormalIrr("xic", 1, "nsd", partner="xi")
    return Alphabet(ext, members, twists, ("xi", "xiv") if ext.split else ("xi", "xic")), EpsilonTable(pairs, singles)


def random_parameter(rng: np.random.Generator, alpha: Alphabet, group: GroupDesc, sign: int,
                     discrete: bool = False, tries: int = 400) -> Parameter | None:
    D = param_dim(group.family, group.dim)
    keys = sorted((r.id, b) for r in alpha.members.values() for b in range(1, D + 1) if r.dim * b <= D)
    for _ in range(tries):
        acc, left = [], D
        for _ in range(4 * D + 4):
            if left == 0:
                break
            opts = [k for k in keys if summand_dim(alpha, k) <= left]
            if not opts:
                break
            k = opts[int(rng.integers(len(opts)))]
            s, d = summand_sign(alpha, k), summand_dim(alpha, k)
            if s == sign:
                if discrete and any(a[:2] == k for a in acc):
                    continue
                acc.append((k[0], k[1], 1))
                left -= d
            elif discrete:
                continue
            elif 2 * d <= left:
                other = k if s == -sign else (alpha[k[0]].partner, k[1])
                acc += [(k[0], k[1], 1), (other[0], other[1], 1)]
                left -= 2 * d
        if left:
            continue
        phi = Parameter(normalize_summands(acc), group, sign)
        if not parameter_violations(alpha, phi):
            return phi
    return None


def random_field(rng: np.random.Generator, unitary: bool) -> QuadExtDesc:
    F = LocalFieldDesc.qp(int(rng.choice(PRIMES)))
    if not unitary:
        return QuadExtDesc(F)
    nonsq = square_classes(F)[1:]
    return QuadExtDesc(F, nonsq[int(rng.integers(len(nonsq)))])


def generate_random_case(family: str, seed: int, max_dim: int | None = None, discrete: bool | None = None) -> CaseFile:
    """Reproducible random case; same seed and arguments give the same case."""
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(100):
        ext = random_field(rng, family == "U")
        alpha, table = random_alphabet(rng, ext)
        dims = [n for n in FAMILY_DIMS[family] if max_dim is None or n <= max_dim]
        n = int(rng.choice(dims))
        ueps = int(rng.choice((1, -1))) if family == "U" else 1
        group = GroupDesc(family, n, ext, unitary_epsilon=ueps)
        sign = param_sign(family, n) if family != "U" else int(rng.choice((1, -1)))
        disc = bool(rng.random() < 0.5) if discrete is None else discrete
        phi = random_parameter(rng, alpha, group, sign, disc)
        if phi is None:
            continue
        S = component_group(alpha, phi)
        chars = S.characters()
        mu = chars[int(rng.integers(len(chars)))]
        ctx = Context(ext, alpha, table)
        return CaseFile(ctx, group, phi, mu.as_dict(), seed=seed)
    raise RuntimeError(f"no valid {family} case for seed {seed}")
