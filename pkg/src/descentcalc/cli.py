"""Command-line driver.  Every subcommand prints one JSON document.

Exit status: 0 on success, 1 when violations are found, 2 on input errors.
The environment variable DESCENTCALC_FIELD ("Q3", "3" or "R") supplies the
field for classify-space inputs that omit it.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .cases import SCHEMA, CaseError, generate_random_case, load_case
from .descent import MODES, DescentConfig, descend, first_occurrence, legal_ell
from .hermitian import FAMILIES, GroupDesc, orbit_admissible, rational_orbits, space_from_json, witt_decompose
from .localfield import LocalFieldDesc, ext_from_json
from .spectrum import (
    PacketEntry,
    SpectrumConfig,
    normalized,
    spectral_first_occurrence,
    spectrum_at,
    submodule_witness,
    vogan_packet,
)
from .verify import ALL_SUITES, run_suite

FIELD_ENV = "DESCENTCALC_FIELD"


class InputError(ValueError):
    pass


def _read_json(path: str) -> dict:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {path}: {e}") from e


def _field_from_env() -> LocalFieldDesc:
    v = os.environ.get(FIELD_ENV)
    if not v:
        raise InputError(f"no field given and {FIELD_ENV} is unset")
    v = v.strip().upper()
    if v in ("R", "REAL"):
        return LocalFieldDesc.real()
    return LocalFieldDesc.qp(int(v.lstrip("Q")))


def _case(args):
    return load_case(_read_json(args.input))


def _entry(case) -> PacketEntry:
    ep = case.enhanced()
    return PacketEntry(ep.phi, ep.mu, case.whittaker_class())


# ---------------------------------------------------------------- subcommands

def cmd_classify_space(args) -> tuple[dict, int]:
    d = _read_json(args.input)
    F = LocalFieldDesc.from_json(d["field"]) if "field" in d else _field_from_env()
    ext = ext_from_json(F, d.get("ext"))
    V = space_from_json(ext, d["space"])
    r, aniso = witt_decompose(V)
    out = {"schema": SCHEMA, "space": V.to_json(), "kind": V.kind, "witt": r,
           "anisotropic_kernel": aniso.invariants()}
    if V.dim:
        fam = {"quadratic": "SO_odd" if V.dim % 2 else "SO_even", "symplectic": "Sp"}.get(V.kind, "U")
        G = GroupDesc(fam, V.dim, ext, V, V.epsilon if fam == "U" else 1)
        out["orbits"] = {str(p1): [o.to_json() for o in rational_orbits(V, p1)]
                         for p1 in range(1, V.dim + 1) if orbit_admissible(G, p1)}
    return out, 0


def cmd_packet(args) -> tuple[dict, int]:
    case = _case(args)
    entries = vogan_packet(case.ctx, case.phi, case.whittaker_class())
    return {"schema": SCHEMA, "group": case.group.to_json(), "whittaker": case.whittaker,
            "parameter": case.phi.to_json(),
            "packet": [{"form": e.form, "mu": {"chi": e.mu.as_dict()}} for e in entries]}, 0


def _descent_cfg(case, args) -> DescentConfig:
    z_range = None
    if getattr(args, "z", None) is not None:
        z_range = (case.field.cls(args.z),)
    return DescentConfig(int(case.search.get("max_summands", 8)), int(case.search.get("max_b", 12)),
                         getattr(args, "search", "discrete-only") or "discrete-only", z_range,
                         getattr(args, "max_dim", None))


def cmd_descend(args) -> tuple[dict, int]:
    case = _case(args)
    if not legal_ell(case.group, args.ell):
        raise InputError(f"ell={args.ell} is not legal for {case.group.label()}")
    D = descend(case.ctx, normalized(case.ctx, _entry(case)), args.ell, _descent_cfg(case, args))
    return {"schema": SCHEMA, **D.to_json()}, 0


def cmd_first_occurrence(args) -> tuple[dict, int]:
    case = _case(args)
    out: dict = {"schema": SCHEMA}
    code = 0
    if args.mode in ("arithmetic", "both"):
        fo = first_occurrence(case.ctx, normalized(case.ctx, _entry(case)), _descent_cfg(case, args))
        out.update(fo.to_json())
    if args.mode in ("spectral", "both"):
        scfg = SpectrumConfig(int(case.search.get("max_summands", 8)), int(case.search.get("max_b", 12)))
        so = spectral_first_occurrence(case.ctx, _entry(case), scfg)
        out["spectral"] = so.to_json()
        out["f_s"] = so.f_s
    if args.mode == "both":
        out["f_a"] = out["ell0"]
        out["equal"] = out["f_a"] == out["f_s"]
        code = 0 if out["equal"] else 1
    return out, code


def cmd_spectrum(args) -> tuple[dict, int]:
    case = _case(args)
    if not orbit_admissible(case.group, args.p1):
        raise InputError(f"p1={args.p1} is not admissible for {case.group.label()}")
    scfg = SpectrumConfig(int(case.search.get("max_summands", 8)), int(case.search.get("max_b", 12)))
    return {"schema": SCHEMA, **spectrum_at(case.ctx, _entry(case), args.p1, scfg).to_json()}, 0


def cmd_submodule(args) -> tuple[dict, int]:
    case = _case(args)
    scfg = SpectrumConfig(int(case.search.get("max_summands", 8)), int(case.search.get("max_b", 12)))
    w = submodule_witness(case.ctx, _entry(case), scfg)
    if w is None:
        return {"schema": SCHEMA, "witness": None, "bound_limited": True}, 0
    p1, orbit, z, sigma = w
    return {"schema": SCHEMA, "bound_limited": False, "witness": {
        "p1": p1, "z": z.tag, "orbit": orbit.to_json() if orbit else None, "sigma": sigma.to_json()}}, 0


def cmd_verify(args) -> tuple[dict, int]:
    suites = ALL_SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(s, args.cases, args.seed, args.jobs) for s in suites]
    bad = any(not r.ok for r in reports)
    return {"schema": SCHEMA, "seed": args.seed, "reports": [r.to_json() for r in reports]}, int(bad)


def cmd_generate(args) -> tuple[dict, int]:
    case = generate_random_case(args.family, args.seed, args.max_dim)
    return case.to_json(), 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="descentcalc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_input=True, **kw):
        sp = sub.add_parser(name, **kw)
        if needs_input:
            sp.add_argument("--input", required=True, help="case JSON file, or - for stdin")
        sp.add_argument("--output", help="write the JSON here instead of stdout")
        sp.set_defaults(fn=fn)
        return sp

    add("classify-space", cmd_classify_space, help="invariants, Witt index and rational orbits of a space")
    add("packet", cmd_packet, help="Vogan packet of the case parameter")
    sp = add("descend", cmd_descend, help="descent at a fixed ell")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--z", help="restrict to one class z (tag)")
    sp.add_argument("--max-dim", type=int, help="largest dimension of a candidate summand")
    sp.add_argument("--search", choices=MODES, default="discrete-only")
    sp = add("first-occurrence", cmd_first_occurrence, help="first occurrence index")
    sp.add_argument("--mode", choices=("arithmetic", "spectral", "both"), default="arithmetic")
    sp.add_argument("--max-dim", type=int)
    sp = add("spectrum", cmd_spectrum, help="branching spectrum at the orbit of size p1")
    sp.add_argument("--p1", type=int, required=True)
    add("submodule", cmd_submodule, help="discrete member of the first spectrum")
    sp = add("verify", cmd_verify, needs_input=False, help="randomized verification suites")
    sp.add_argument("--suite", choices=ALL_SUITES + ("all",), required=True)
    sp.add_argument("--cases", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp = add("generate", cmd_generate, needs_input=False, help="emit a random case file")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-dim", type=int)
    return p


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        out, code = args.fn(args)
    except (InputError, CaseError, KeyError, ValueError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 2
    text = json.dumps(out, sort_keys=True, ensure_ascii=False, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
