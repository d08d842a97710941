"""Randomized verification suites behind `descentcalc verify` and the acceptance tests.

Case i of a run with seed s uses the case seed s * 1_000_003 + i and the family
FAMILIES[i % 5], so any violation can be replayed from its recorded seed.
"""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .cases import generate_random_case, random_parameter
from .descent import DescentConfig, first_occurrence, legal_ell, target_group, verify_discreteness, verify_tower
from .ggp import chi_twisted, eta, multiplicity_tempered
from .hermitian import (
    GroupDesc,
    add_hyperbolic,
    all_spaces,
    classify,
    direct_sum,
    orbit_admissible,
    p1_block,
    rational_orbits,
    witt_decompose,
)
from .localfield import LocalFieldDesc, QuadExtDesc, norm_class_group, square_classes
from .lparam import (
    EnhancedParameter,
    classify_summands,
    component_group,
    contragredient_enhanced,
    summand_dim,
)
from .spectrum import (
    PacketEntry,
    SpectrumConfig,
    StandardModuleData,
    first_descent_spectrum,
    multiplicity,
    spectral_first_occurrence,
)

FAMILIES = ("SO_odd", "SO_even", "Sp", "Mp", "U")


@dataclass
class VerifyReport:
    suite: str
    cases: int
    violations: list[dict] = field(default_factory=list)
    wall_time: float = 0.0
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"suite": self.suite, "cases": self.cases, "violations": self.violations,
                "wall_time": round(self.wall_time, 3), "stats": self.stats}


def case_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


def _cfg(case) -> DescentConfig:
    return DescentConfig(int(case.search.get("max_summands", 8)), int(case.search.get("max_b", 12)))


# ---------------------------------------------------------------- per-case checks

def check_component_group(family: str, s: int) -> tuple[list[str], dict]:
    c = generate_random_case(family, s)
    alpha, phi = c.ctx.alphabet, c.phi
    gp, _, _ = classify_summands(alpha, phi)
    dims = [summand_dim(alpha, k) for k in gp]
    odd = any(d % 2 for d in dims)
    cut = c.ctx.ext.split and ((family == "SO_even" and odd) or (family == "Sp" and bool(gp)))
    members = [e for e in product((0, 1), repeat=len(gp))
               if not cut or sum(x * d for x, d in zip(e, dims)) % 2 == 0]
    want = 2 ** (len(gp) - 1) if cut else 2 ** len(gp)
    S = component_group(alpha, phi)
    out = []
    if S.order() != want or len(members) != want or sorted(S.elements()) != sorted(members):
        out.append(f"|S_phi| = {S.order()} but the membership rule gives {len(members)} (expected {want})")
    if len(S.characters()) != want:
        out.append("character count differs from the group order")
    return out, {}


def check_contragredient(family: str, s: int) -> tuple[list[str], dict]:
    c = generate_random_case(family, s)
    ctx, ep = c.ctx, c.enhanced()
    out = []
    dual = contragredient_enhanced(ctx, ep)
    back = contragredient_enhanced(ctx, dual)
    if back.key() != ep.key():
        out.append("contragredient is not an involution")
    for a in norm_class_group(ctx.ext):
        S = component_group(ctx.alphabet, ep.phi)
        twisted = EnhancedParameter(ep.phi, S.canonical(ep.mu * eta(ctx, ep.phi, a)))
        lhs = contragredient_enhanced(ctx, twisted)
        Sd = component_group(ctx.alphabet, dual.phi)
        rhs = Sd.canonical(dual.mu * eta(ctx, dual.phi, a))
        if lhs.phi.summands != dual.phi.summands or lhs.mu != rhs:
            out.append(f"dual(mu eta_a) != dual(mu) eta_a for a={a.tag}")
    return out, {}


def _random_pair(family: str, s: int, min_ell: int = 1):
    """A case, a legal ell >= min_ell, a parameter psi of the relevant H and a class z."""
    for j in range(40):
        c = generate_random_case(family, s + 7919 * j)
        rng = np.random.Generator(np.random.PCG64(s + 17 + 7919 * j))
        G = c.group
        ells = [l for l in range(min_ell, G.dim + 1) if legal_ell(G, l)]
        if not ells:
            continue
        for _ in range(20):
            ell = int(rng.choice(ells))
            psi = random_parameter(rng, c.ctx.alphabet, target_group(G, ell), -c.phi.sign)
            if psi is not None:
                Z = list(norm_class_group(c.ctx.ext))
                return c, ell, psi, Z[int(rng.integers(len(Z)))]
    return None, None, None, None


def check_distinguished(family: str, s: int) -> tuple[list[str], dict]:
    c, ell, psi, z = _random_pair(family, s)
    if psi is None:
        return [], {"skipped": 1}
    ctx = c.ctx
    Sphi, Spsi = component_group(ctx.alphabet, c.phi), component_group(ctx.alphabet, psi)
    hits = 0
    for mu in Sphi.characters():
        for nu in Spsi.characters():
            hits += multiplicity_tempered(ctx, EnhancedParameter(c.phi, mu), EnhancedParameter(psi, nu), z)
    return ([] if hits == 1 else [f"{hits} distinguished pairs at ell={ell}, z={z.tag}"]), {"checked": 1}


def check_tower(family: str, s: int) -> tuple[list[str], dict]:
    c = generate_random_case(family, s)
    rep = verify_tower(c.ctx, c.enhanced(), _cfg(c))
    return rep.violations, {"pairs": rep.checked}


def check_discreteness(family: str, s: int) -> tuple[list[str], dict]:
    c = generate_random_case(family, s)
    rep = verify_discreteness(c.ctx, c.enhanced(), _cfg(c))
    return rep.violations, {"members": rep.checked}


def check_first_occurrence(family: str, s: int) -> tuple[list[str], dict]:
    """f_s = f_a and the first spectrum equals the first descent (both already contragredients)."""
    c = generate_random_case(family, s)
    ctx, ep = c.ctx, c.enhanced()
    cfg = _cfg(c)
    fa = first_occurrence(ctx, ep, cfg)
    entry = PacketEntry(ep.phi, ep.mu, c.field.cls(1))
    scfg = SpectrumConfig(cfg.max_summands, cfg.max_b)
    fs = spectral_first_occurrence(ctx, entry, scfg)
    out = []
    if fa.ell0 != fs.f_s:
        out.append(f"f_a = {fa.ell0} but f_s = {fs.f_s}")
    elif fa.ell0 is not None:
        fds = first_descent_spectrum(ctx, entry, scfg)
        out += fds.violations
        if fds.result.keys() != fa.descent.keys():
            out.append("first spectrum differs from the contragredients of the first descent")
    return out, {"found": int(fa.ell0 is not None)}


def _blocks(rng, p0: int, tag: str):
    if p0 == 0:
        return (), ()
    split = [p0] if p0 == 1 or rng.random() < 0.5 else [p0 - 1, 1]
    s = tuple(sorted((float(rng.integers(0, 4)) / 2 for _ in split), reverse=True))
    return s, tuple((f"{tag}{i}", d) for i, d in enumerate(split))


def check_gl_padding(family: str, s: int) -> tuple[list[str], dict]:
    """Adding GL-blocks to pi and sigma with the matching orbit leaves m unchanged."""
    c, ell, psi, z = _random_pair(family, s, min_ell=2)
    if psi is None:
        return [], {"skipped": 1}
    ctx, ep = c.ctx, c.enhanced()
    rng = np.random.Generator(np.random.PCG64(s + 29))
    if rng.random() < 0.5:
        nu = chi_twisted(ctx, c.phi, psi, z)[1]
    else:
        chars = component_group(ctx.alphabet, psi).characters()
        nu = chars[int(rng.integers(len(chars)))]
    sigma0 = EnhancedParameter(psi, nu)
    base = multiplicity(ctx, ep, sigma0, ell, z)
    q0 = int(rng.integers(0 if ell > 2 else 1, 3))
    p0s = [p0 for p0 in range(0, (ell + 2 * q0 - 1) // 2 + 1) if p0 + q0 > 0]
    p0 = int(rng.choice(p0s))
    pi = StandardModuleData(*_blocks(rng, q0, "tau"), ep)
    sigma = StandardModuleData(*_blocks(rng, p0, "sigma"), sigma0)
    padded = multiplicity(ctx, pi, sigma, ell + 2 * q0 - 2 * p0, z)
    out = []
    if padded != base:
        out.append(f"m changes under GL-padding: {base} -> {padded} (q0={q0}, p0={p0})")
    if base not in (0, 1):
        out.append("multiplicity exceeds one")
    return out, {"checked": 1, "ones": base}


def _admissible_rule(kind: str, n: int, r: int, p1: int) -> bool:
    """The rationality conditions for the orbit [p1, 1^(n-p1)], transcribed case by case."""
    if not 0 < p1 <= n:
        return False
    if kind == "quadratic":
        if p1 % 2 == 0:
            return False
        return p1 <= (2 * r - 1 if n == 2 * r else 2 * r + 1)
    if kind == "symplectic":
        return p1 % 2 == 0
    return p1 <= 2 * r + 1


def check_spaces(p: int, max_n: int = 12) -> tuple[list[str], dict]:
    F = LocalFieldDesc.qp(p)
    out = []
    count = 0
    exts = [QuadExtDesc(F)] + [QuadExtDesc(F, d) for d in square_classes(F)[1:]]
    for ext in exts:
        for eps in (1, -1):
            for n in range(0, max_n + 1):
                if ext.split and eps == -1 and n % 2:
                    continue
                for V in all_spaces(ext, eps, n):
                    count += 1
                    r, aniso = witt_decompose(V)
                    if add_hyperbolic(aniso, r) != V or r != V.witt:
                        out.append(f"Witt round trip fails for {V.invariants()}")
                    if classify(ext, eps, n, V.disc, V.hasse) != V:
                        out.append(f"classify does not reproduce {V.invariants()}")
                    if n == 0:
                        continue
                    fam = ("SO_odd" if n % 2 else "SO_even") if V.kind == "quadratic" else \
                        "Sp" if V.kind == "symplectic" else "U"
                    G = GroupDesc(fam, n, ext, V, 1 if fam != "U" else eps)
                    for p1 in range(1, n + 1):
                        want = _admissible_rule(V.kind if V.kind in ("quadratic", "symplectic") else "unitary",
                                                n, V.witt, p1)
                        if orbit_admissible(G, p1) != want:
                            out.append(f"admissibility of p1={p1} on {V.invariants()}")
                        if not want:
                            continue
                        orbits = rational_orbits(V, p1)
                        if not orbits:
                            out.append(f"no rational orbit for admissible p1={p1} on {V.invariants()}")
                        for o in orbits:
                            if direct_sum(p1_block(V, p1, o.line_class), o.descended_space) != V:
                                out.append(f"V != V_(p1) + W for p1={p1}, line {o.line_class.tag}")
    return out, {"spaces": count}


SUITES = {
    "component-group": check_component_group,
    "contragredient": check_contragredient,
    "distinguished": check_distinguished,
    "tower": check_tower,
    "discreteness": check_discreteness,
    "first-occurrence": check_first_occurrence,
    "gl-padding": check_gl_padding,
}


def _run_one(args):
    suite, i, s, family = args
    try:
        viol, stats = SUITES[suite](family, s)
    except Exception as e:  # a crash is a violation with its replay data
        viol, stats = [f"{type(e).__name__}: {e}"], {}
    return i, [{"seed": s, "family": family, "message": v} for v in viol], stats


def run_suite(suite: str, cases: int, seed: int, jobs: int = 1, families=FAMILIES) -> VerifyReport:
    t0 = time.time()
    if suite == "spaces":
        rep = VerifyReport(suite, 0)
        for p in (2, 3, 5, 7):
            viol, st = check_spaces(p)
            rep.cases += st["spaces"]
            rep.violations += [{"seed": None, "family": f"Q{p}", "message": v} for v in viol]
        rep.wall_time = time.time() - t0
        return rep
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    work = [(suite, i, case_seed(seed, i), families[i % len(families)]) for i in range(cases)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_one, work, chunksize=4))
    else:
        results = [_run_one(w) for w in work]
    rep = VerifyReport(suite, cases)
    for _, viol, stats in sorted(results, key=lambda r: r[0]):
        rep.violations += viol
        for k, v in stats.items():
            rep.stats[k] = rep.stats.get(k, 0) + v
    rep.wall_time = time.time() - t0
    return rep


ALL_SUITES = ("spaces",) + tuple(SUITES)
