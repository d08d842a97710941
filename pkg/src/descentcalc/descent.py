"""Descent of enhanced parameters, first occurrence, tower padding and discreteness checks."""
from __future__ import annotations

from dataclasses import dataclass, field

from .epsilon import Context
from .ggp import chi_twisted
from .hermitian import GroupDesc, relevant_pair
from .localfield import SquareClass, norm_class_group
from .lparam import (
    EnhancedParameter,
    Parameter,
    component_group,
    contragredient_enhanced,
    is_discrete,
    normalize_summands,
    param_dim,
    parameter_violations,
    summand_dim,
    summand_sign,
)

MODES = ("discrete-only", "all-bounded")


@dataclass(frozen=True)
class DescentConfig:
    max_summands: int = 8  # simple summands counted with multiplicity
    max_b: int = 12
    mode: str = "discrete-only"
    z_range: tuple[SquareClass, ...] | None = None
    max_dim: int | None = None  # largest dimension of a single summand

    def __post_init__(self):
        if self.max_summands < 0 or self.max_b < 1 or (self.max_dim is not None and self.max_dim < 1):
            raise ValueError("bounds must be nonnegative")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")


@dataclass
class DescentSet:
    ell: int
    members: list[tuple[SquareClass, EnhancedParameter]] = field(default_factory=list)
    bound_limited: bool = False

    def keys(self) -> set:
        return {(z.rep, ep.key()) for z, ep in self.members}

    def __bool__(self):
        return bool(self.members)

    def __len__(self):
        return len(self.members)

    def to_json(self) -> dict:
        return {"ell": self.ell, "bound_limited": self.bound_limited,
                "members": [dict(ep.to_json(), z=z.tag) for z, ep in self.members]}


def legal_ell(G: GroupDesc, ell: int) -> bool:
    if not 0 < ell <= G.dim:
        return False
    if G.family == "U":
        return True
    return (ell % 2 == 1) == (G.epsilon == 1)


def target_group(G: GroupDesc, ell: int) -> GroupDesc:
    return relevant_pair(G, ell)


# ---------------------------------------------------------------- candidates

def _atoms(ctx: Context, sign: int, cfg: DescentConfig, dim: int):
    """Building blocks of candidates: (summand contributions, dim, weight, is_gp)."""
    alpha = ctx.alphabet
    out = []
    for rid in sorted(alpha.members):
        r = alpha[rid]
        for b in range(1, min(cfg.max_b, dim // r.dim) + 1):
            k = (rid, b)
            s = summand_sign(alpha, k)
            d = summand_dim(alpha, k)
            if cfg.max_dim is not None and d > cfg.max_dim:
                continue
            if s == sign:
                out.append((((rid, b, 1),), d, 1, True))
            elif cfg.mode == "discrete-only":
                continue
            elif s == -sign:
                if 2 * d <= dim:
                    out.append((((rid, b, 2),), 2 * d, 2, False))
            elif rid < r.partner and 2 * d <= dim:
                out.append((((rid, b, 1), (r.partner, b, 1)), 2 * d, 2, False))
    return out


def candidates(ctx: Context, H: GroupDesc, sign: int, cfg: DescentConfig, generic: bool = True) -> list[Parameter]:
    """Parameters of H of the given type, generated from the alphabet within cfg."""
    D = param_dim(H.family, H.dim)
    if D == 0 or (H.trivial and ctx.alphabet.trivial_id is None):
        return [Parameter((), H, sign, generic)]
    atoms = _atoms(ctx, sign, cfg, D)
    reuse = cfg.mode == "all-bounded"
    out = []

    def rec(i, left, budget, acc):
        if left == 0:
            phi = Parameter(normalize_summands(acc), H, sign, generic)
            if not parameter_violations(ctx.alphabet, phi):
                out.append(phi)
            return
        for j in range(i, len(atoms)):
            parts, d, w, _ = atoms[j]
            if d <= left and w <= budget:
                rec(j if reuse else j + 1, left - d, budget - w, acc + list(parts))

    rec(0, D, cfg.max_summands, [])
    return sorted(set(out), key=lambda p: p.summands)


# ---------------------------------------------------------------- descent

def descend_z(ctx: Context, ep: EnhancedParameter, ell: int, z: SquareClass, cfg: DescentConfig,
              cands: list[Parameter] | None = None) -> DescentSet:
    G = ep.phi.group
    if not legal_ell(G, ell):
        raise ValueError(f"ell={ell} is not legal for {G.label()}")
    H = target_group(G, ell)
    if cands is None:
        cands = candidates(ctx, H, -ep.phi.sign, cfg, ep.phi.generic)
    S = component_group(ctx.alphabet, ep.phi)
    out = DescentSet(ell)
    for psi in cands:
        mu, nu = chi_twisted(ctx, ep.phi, psi, z)
        if S.same(mu, ep.mu):
            out.members.append((z, contragredient_enhanced(ctx, EnhancedParameter(psi, nu))))
    return out


def z_classes(ctx: Context, cfg: DescentConfig) -> list[SquareClass]:
    return list(cfg.z_range) if cfg.z_range is not None else list(norm_class_group(ctx.ext))


def descend(ctx: Context, ep: EnhancedParameter, ell: int, cfg: DescentConfig) -> DescentSet:
    G = ep.phi.group
    if not legal_ell(G, ell):
        raise ValueError(f"ell={ell} is not legal for {G.label()}")
    cands = candidates(ctx, target_group(G, ell), -ep.phi.sign, cfg, ep.phi.generic)
    out = DescentSet(ell)
    for z in z_classes(ctx, cfg):
        out.members.extend(descend_z(ctx, ep, ell, z, cfg, cands).members)
    out.members.sort(key=lambda m: (m[0].index, m[1].key()))
    return out


@dataclass
class FirstOccurrence:
    ell0: int | None
    descent: DescentSet | None
    bound_limited: bool

    def witness(self):
        return self.descent.members[0] if self.descent else None

    def to_json(self) -> dict:
        return {"ell0": self.ell0, "bound_limited": self.bound_limited,
                "members": self.descent.to_json()["members"] if self.descent else []}


def first_occurrence(ctx: Context, ep: EnhancedParameter, cfg: DescentConfig) -> FirstOccurrence:
    G = ep.phi.group
    for ell in range(G.dim, 0, -1):
        if legal_ell(G, ell):
            D = descend(ctx, ep, ell, cfg)
            if D:
                return FirstOccurrence(ell, D, False)
    return FirstOccurrence(None, None, True)


# ---------------------------------------------------------------- tower

def tower_pad(ctx: Context, psi: Parameter, k: int, H: GroupDesc | None = None) -> Parameter:
    """psi + pad (x) mu_b + pad^dual (x) mu_b, adding 2k dimensions."""
    if k == 0:
        return psi if H is None else Parameter(psi.summands, H, psi.sign, psi.generic)
    alpha = ctx.alphabet
    if alpha.pad is None:
        raise ValueError("the alphabet has no pad pair")
    a, b = alpha.pad
    d = alpha[a].dim
    if k % d:
        raise ValueError(f"pad of dimension {d} cannot add {2 * k}")
    c = k // d
    summands = normalize_summands(list(psi.summands) + [(a, c, 1), (b, c, 1)])
    return Parameter(summands, H or psi.group, psi.sign, psi.generic)


@dataclass
class Report:
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_tower(ctx: Context, ep: EnhancedParameter, cfg: DescentConfig) -> Report:
    """Every nonempty D_l1 forces nonempty D_l for legal l < l1, witnessed by padding."""
    rep = Report()
    G = ep.phi.group
    legal = [l for l in range(1, G.dim + 1) if legal_ell(G, l)]
    nonempty = {}
    for l1 in legal:
        nonempty[l1] = descend(ctx, ep, l1, cfg)
    allcfg = DescentConfig(cfg.max_summands + 2, cfg.max_b, "all-bounded", cfg.z_range)  # pads add two summands
    found: dict = {}  # (l, z) -> keys of the all-bounded descent
    for l1, D in nonempty.items():
        if not D:
            continue
        z, member = D.members[0]
        psi = contragredient_enhanced(ctx, member).phi  # the contragredient is an involution
        for l in legal:
            if l >= l1 or (l1 - l) % 2:
                continue
            rep.checked += 1
            H = target_group(G, l)
            try:
                padded = tower_pad(ctx, psi, (l1 - l) // 2, H)
            except ValueError as e:
                if not descend(ctx, ep, l, allcfg):
                    rep.violations.append(f"D_{l} empty below nonempty D_{l1} ({e})")
                continue
            mu, nu = chi_twisted(ctx, ep.phi, padded, z)
            if not component_group(ctx.alphabet, ep.phi).same(mu, ep.mu):
                rep.violations.append(f"padded witness from D_{l1} fails at l={l}")
                continue
            want = contragredient_enhanced(ctx, EnhancedParameter(padded, nu))
            if (l, z.rep) not in found:
                found[(l, z.rep)] = descend_z(ctx, ep, l, z, allcfg).keys()
            if (z.rep, want.key()) not in found[(l, z.rep)]:
                rep.violations.append(f"padded witness at l={l} not re-found by descend")
    return rep


def verify_discreteness(ctx: Context, ep: EnhancedParameter, cfg: DescentConfig) -> Report:
    """Members of the first descent are discrete, even under the all-bounded search."""
    rep = Report()
    fo = first_occurrence(ctx, ep, DescentConfig(cfg.max_summands, cfg.max_b, "discrete-only", cfg.z_range, cfg.max_dim))
    allcfg = DescentConfig(cfg.max_summands, cfg.max_b, "all-bounded", cfg.z_range, cfg.max_dim)
    fo_all = first_occurrence(ctx, ep, allcfg)
    if fo.ell0 != fo_all.ell0:
        rep.violations.append(f"first occurrence depends on the search mode: {fo.ell0} vs {fo_all.ell0}")
    if fo_all.descent is None:
        return rep
    for z, member in fo_all.descent.members:
        rep.checked += 1
        if not is_discrete(ctx.alphabet, member.phi):
            rep.violations.append(f"non-discrete member {member.phi.summands} at z={z.tag}")
    if fo.descent is not None and fo.descent.keys() != fo_all.descent.keys():
        rep.violations.append("discrete-only and all-bounded first descents differ")
    return rep
