"""Representation side: Vogan packets, standard modules and spectra of branching.

Occurrence of sigma in the spectrum of pi is decided by the tempered branching
multiplicity after stripping GL-blocks from both sides.  This module searches
its own candidate space and never calls into the descent module.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .epsilon import Context
from .ggp import eta, multiplicity_tempered
from .hermitian import GroupDesc, OrbitData, orbit_admissible, quasi_split_space, rational_orbits, relevant_pair
from .localfield import SquareClass, norm_class_group
from .lparam import (
    CharacterVec,
    EnhancedParameter,
    Parameter,
    component_group,
    contragredient_enhanced,
    is_discrete,
    normalize_summands,
    param_dim,
    parameter_violations,
)


@dataclass(frozen=True)
class PacketEntry:
    phi: Parameter
    mu: CharacterVec
    a: SquareClass
    form: str = "quasi-split"

    def enhanced(self) -> EnhancedParameter:
        return EnhancedParameter(self.phi, self.mu)


def vogan_packet(ctx: Context, phi: Parameter, a: SquareClass | None = None) -> list[PacketEntry]:
    """One entry per character of S_phi; the trivial character sits on the quasi-split form."""
    if a is None:
        a = ctx.ext.base.cls(1)
    S = component_group(ctx.alphabet, phi)
    out = []
    for c in S.characters():
        tag = "quasi-split" if c == S.trivial() else "inner:" + "".join("+" if v == 1 else "-" for v in c.values)
        out.append(PacketEntry(phi, c, a, tag))
    return out


def rebase(ctx: Context, entry: PacketEntry, a_new: SquareClass) -> PacketEntry:
    """Same representation labelled through the Whittaker datum a_new."""
    S = component_group(ctx.alphabet, entry.phi)
    mu = S.canonical(entry.mu * eta(ctx, entry.phi, entry.a * a_new))
    return PacketEntry(entry.phi, mu, a_new, entry.form)


def normalized(ctx: Context, entry: PacketEntry) -> EnhancedParameter:
    return rebase(ctx, entry, ctx.ext.base.cls(1)).enhanced()


@dataclass(frozen=True)
class StandardModuleData:
    s: tuple[float, ...]
    gl_blocks: tuple[tuple[str, int], ...]  # (label, dimension of the GL-block)
    sigma0: EnhancedParameter

    def __post_init__(self):
        if len(self.s) != len(self.gl_blocks):
            raise ValueError("one exponent per GL-block")
        if any(x < 0 for x in self.s) or list(self.s) != sorted(self.s, reverse=True):
            raise ValueError("exponents must be nonnegative and decreasing")
        if any(d < 1 for _, d in self.gl_blocks):
            raise ValueError("GL-blocks have positive dimension")

    @property
    def p0(self) -> int:
        return sum(d for _, d in self.gl_blocks)

    @property
    def group_dim(self) -> int:
        return self.sigma0.phi.group.dim + 2 * self.p0

    def key(self) -> tuple:
        return (self.sigma0.key(), self.p0)

    def to_json(self) -> dict:
        return {"s": list(self.s), "gl_blocks": [list(b) for b in self.gl_blocks],
                "sigma0": self.sigma0.to_json()}


def as_standard(x) -> StandardModuleData:
    if isinstance(x, StandardModuleData):
        return x
    return StandardModuleData((), (), x)


def multiplicity(ctx: Context, pi, sigma, p1: int, z: SquareClass) -> int:
    """m(pi, sigma) for the orbit of size p1 along z, reduced to the tempered parts."""
    pi, sigma = as_standard(pi), as_standard(sigma)
    G = pi.sigma0.phi.group
    n = G.dim + 2 * pi.p0
    H = GroupDesc(G.family, n, G.ext, unitary_epsilon=G.epsilon)
    target = relevant_pair(H, p1)
    Hs = sigma.sigma0.phi.group
    if target.dim != sigma.group_dim or target.family != Hs.family:
        raise ValueError("dimension mismatch between pi, sigma and the orbit")
    p1_reduced = p1 + 2 * sigma.p0 - 2 * pi.p0
    t0 = relevant_pair(G, p1_reduced)
    if (t0.family, t0.dim) != (Hs.family, Hs.dim):
        raise ValueError("tempered parts do not form a relevant pair")
    return multiplicity_tempered(ctx, pi.sigma0, sigma.sigma0, z)


# ---------------------------------------------------------------- candidate search

@dataclass(frozen=True)
class SpectrumConfig:
    max_summands: int = 8
    max_b: int = 12


def tempered_parameters(ctx: Context, H: GroupDesc, sign: int, cfg: SpectrumConfig,
                        generic: bool = True) -> list[Parameter]:
    """All valid parameters of H with the given sign, at most max_summands summands."""
    alpha = ctx.alphabet
    D = param_dim(H.family, H.dim)
    keys = sorted((r.id, b) for r in alpha.members.values()
                  for b in range(1, cfg.max_b + 1) if r.dim * b <= D)
    out = []

    def walk(i, left, count, acc):
        if left == 0:
            phi = Parameter(normalize_summands((r, b, 1) for r, b in acc), H, sign, generic)
            if not parameter_violations(alpha, phi):
                out.append(phi)
            return
        if count == cfg.max_summands or i == len(keys):
            return
        r, b = keys[i]
        d = alpha[r].dim * b
        # take keys[i] once more, or move past it
        if d <= left:
            walk(i, left - d, count + 1, acc + [keys[i]])
        walk(i + 1, left, count, acc)

    walk(0, D, 0, [])
    return out


@dataclass
class SpectrumResult:
    p1: int
    orbits: list[OrbitData]
    members: list[tuple[SquareClass, StandardModuleData]] = field(default_factory=list)

    def keys(self, tempered_only: bool = False) -> set:
        return {(z.rep, m.sigma0.key()) for z, m in self.members if not tempered_only or m.p0 == 0}

    def __bool__(self):
        return bool(self.members)

    def to_json(self) -> dict:
        return {"p1": self.p1, "orbits": [o.to_json() for o in self.orbits],
                "members": [dict(m.to_json(), z=z.tag) for z, m in self.members]}


def _orbits(G: GroupDesc, p1: int) -> list[OrbitData]:
    try:
        V = G.space if G.space is not None else quasi_split_space(G)
        return rational_orbits(V, p1)
    except ValueError:
        return []


class _Search:
    """Caches candidate lists per tempered target group."""

    def __init__(self, ctx: Context, cfg: SpectrumConfig):
        self.ctx, self.cfg = ctx, cfg
        self.cache: dict = {}

    def params(self, H: GroupDesc, sign: int, generic: bool) -> list[Parameter]:
        k = (H.family, H.dim, sign, generic)
        if k not in self.cache:
            self.cache[k] = tempered_parameters(self.ctx, H, sign, self.cfg, generic)
        return self.cache[k]


def _spectrum(search: _Search, ep: EnhancedParameter, p1: int) -> SpectrumResult:
    ctx = search.ctx
    G = ep.phi.group
    res = SpectrumResult(p1, _orbits(G, p1))
    for z in norm_class_group(ctx.ext):
        for p0 in range(0, (G.dim - p1) // 2 + 1):
            p1r = p1 + 2 * p0
            H0 = relevant_pair(G, p1r)
            for psi in search.params(H0, -ep.phi.sign, ep.phi.generic):
                for nu in component_group(ctx.alphabet, psi).characters():
                    s0 = EnhancedParameter(psi, nu)
                    blocks = (("tau", p0),) if p0 else ()
                    sigma = StandardModuleData((0.5,) * len(blocks), blocks, s0)
                    if multiplicity(ctx, ep, sigma, p1, z):
                        dual = StandardModuleData(sigma.s, tuple((f"{t}^v", d) for t, d in blocks),
                                                  contragredient_enhanced(ctx, s0))
                        res.members.append((z, dual))
    res.members.sort(key=lambda m: (m[0].index, m[1].p0, m[1].sigma0.key()))
    return res


def spectrum_at(ctx: Context, entry: PacketEntry, p1: int, cfg: SpectrumConfig | None = None) -> SpectrumResult:
    G = entry.phi.group
    if not orbit_admissible(G, p1):
        raise ValueError(f"p1={p1} is not admissible for {G.label()}")
    return _spectrum(_Search(ctx, cfg or SpectrumConfig()), normalized(ctx, entry), p1)


@dataclass
class SpectralOccurrence:
    f_s: int | None
    result: SpectrumResult | None
    bound_limited: bool

    def to_json(self) -> dict:
        return {"f_s": self.f_s, "bound_limited": self.bound_limited,
                "spectrum": self.result.to_json() if self.result else None}


def spectral_first_occurrence(ctx: Context, entry: PacketEntry, cfg: SpectrumConfig | None = None) -> SpectralOccurrence:
    G = entry.phi.group
    search = _Search(ctx, cfg or SpectrumConfig())
    ep = normalized(ctx, entry)
    for p1 in range(G.dim, 0, -1):
        if orbit_admissible(G, p1):
            res = _spectrum(search, ep, p1)
            if res:
                return SpectralOccurrence(p1, res, False)
    return SpectralOccurrence(None, None, True)


@dataclass
class FirstDescentSpectrum:
    result: SpectrumResult | None
    violations: list[str]


def first_descent_spectrum(ctx: Context, entry: PacketEntry, cfg: SpectrumConfig | None = None) -> FirstDescentSpectrum:
    occ = spectral_first_occurrence(ctx, entry, cfg)
    bad = []
    if occ.result is not None:
        for z, m in occ.result.members:
            if m.p0:
                bad.append(f"GL-block survives at the first occurrence (z={z.tag})")
            elif not is_discrete(ctx.alphabet, m.sigma0.phi):
                bad.append(f"non-discrete member {m.sigma0.phi.summands} (z={z.tag})")
    return FirstDescentSpectrum(occ.result, bad)


def submodule_witness(ctx: Context, entry: PacketEntry, cfg: SpectrumConfig | None = None):
    """(p1, orbit, sigma) with sigma a discrete member of the first spectrum, or None."""
    occ = spectral_first_occurrence(ctx, entry, cfg)
    if occ.result is None:
        return None
    for z, m in occ.result.members:
        if m.p0 == 0 and is_discrete(ctx.alphabet, m.sigma0.phi):
            orbit = next((o for o in occ.result.orbits if _zclass(ctx, o.line_class) == z), None)
            return occ.f_s, orbit, z, m.sigma0
    return None


def _zclass(ctx: Context, c: SquareClass) -> SquareClass:
    return norm_class_group(ctx.ext).reduce(c)
