"""Command-line front end.

Subcommands:

    weyl        coset tables, negative root sets, reduced words
    normfactor  render the inverse normalizing factor of one element
    poles       constant-term pole/image reports for a scenario
    verify      run the theorem grids (H+, H-, S+, S-)
    numcheck    run the numeric verification battery

Identical inputs produce byte-identical output (keys sorted, no
timestamps).  The exit code is 0 exactly when every requested check
passed.  Numeric precision can be tuned with the environment variables
SP4EIS_ZETA_N and SP4EIS_ZETA_M (Euler-Maclaurin term counts).
"""

from __future__ import annotations

import argparse
import json
import sys

from .characters import lambda_for_case, parse_class, weyl_act
from .checks import run_numeric_checks
from .constant_term import coset_representatives, eisenstein_order
from .localrules import load_rules
from .normfactor import canonicalize, inverse_norm_factor
from .roots import CRootSystem
from .scenario import Scenario, load_scenario, scenario_from_dict
from .theorems import theorem_ids, verify_theorem

JSON_KW = dict(indent=2, sort_keys=True)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------

def cmd_weyl(args) -> int:
    system = CRootSystem(2)
    cases = ["heisenberg", "siegel"] if args.case == "all" else [args.case]
    payload = {"schema": "sp4eis-weyl/1", "cases": {}}
    lines = []
    for case in cases:
        lam, keep = lambda_for_case(case)
        rows = []
        for w in coset_representatives(case, system):
            neg = [tuple(str(c) for c in a) for a in system.negative_set(w)]
            rows.append({
                "name": w.name,
                "word": list(w.word),
                "length": w.length,
                "negative_roots": neg,
                "target": weyl_act(w, lam).render(),
            })
            lines.append(f"{case:11} {w.name:7} length={w.length} "
                         f"negatives={neg} target={weyl_act(w, lam).render()}")
        payload["cases"][case] = rows
    if args.full:
        payload["group"] = [{"name": w.name, "word": list(w.word), "length": w.length}
                            for w in system.elements()]
        for w in system.elements():
            lines.append(f"{'group':11} {w.name:7} length={w.length}")
    _emit(args, json.dumps(payload, **JSON_KW) if args.json else "\n".join(lines))
    return 0


def cmd_normfactor(args) -> int:
    system = CRootSystem(2)
    lam, _ = lambda_for_case(args.case)
    w = system.element_by_name(args.w)
    expr = inverse_norm_factor(lam, w, system)
    cls = parse_class(args.char_class) if args.char_class else None
    rendered = canonicalize(expr, cls).render() if cls else expr.render()
    if args.json:
        _emit(args, json.dumps({
            "schema": "sp4eis-normfactor/1",
            "case": args.case, "w": w.name,
            "char_class": args.char_class,
            "inverse_factor": rendered,
        }, **JSON_KW))
    else:
        _emit(args, rendered)
    return 0


def _scenario_from_args(args) -> Scenario:
    if args.scenario:
        return load_scenario(args.scenario)
    data = {
        "case": args.case,
        "char_class": args.char_class,
        "s0": args.s0 or ["0"],
    }
    if args.place:
        places = []
        for item in args.place:
            bits = item.split(":")
            if len(bits) != 3:
                raise SystemExit(f"bad --place {item!r}; expected KIND:CLASS:CHOICE")
            places.append({"kind": bits[0], "class": bits[1], "choice": bits[2]})
        data["places"] = places
    return scenario_from_dict(data, source="<args>")


def cmd_poles(args) -> int:
    scenario = _scenario_from_args(args)
    rules = load_rules(args.rules) if args.rules else None
    reports = [eisenstein_order(scenario.case, scenario.profile, s0,
                                scenario.char_class, rules=rules)
               for s0 in scenario.s0_list]
    if args.json:
        _emit(args, json.dumps({
            "schema": "sp4eis-poles/1",
            "scenario": scenario.to_json(),
            "reports": [r.to_json() for r in reports],
        }, **JSON_KW))
    else:
        lines = []
        for r in reports:
            pole = r.pole_order if r.pole_order is not None else "conditional"
            cond = "".join(f" [{d.symbol} at {d.point}]" for d in r.conditional_on)
            lines.append(f"{r.case} chi={r.char_class.value} s0={r.s0}: "
                         f"pole order {pole}{cond}"
                         + (" constant term vanishes at the point" if r.vanishes_at_point else ""))
            for t in r.terms:
                lines.append(f"  {t.w.name:6} factor {t.expr.render()}")
                lines.append(f"         order {t.order.render()}  target {t.target}")
            for e in r.image:
                lines.append(f"  image at {e.place}: {e.label} ({e.structure})"
                             + (f" - {e.note}" if e.note else ""))
        _emit(args, "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    rules = load_rules(args.rules) if args.rules else None
    ids = args.theorem or theorem_ids()
    reports = [verify_theorem(tid, rules=rules) for tid in ids]
    ok = all(r.passed for r in reports)
    if args.json:
        _emit(args, json.dumps({
            "schema": "sp4eis-verify/1",
            "passed": ok,
            "theorems": [r.to_json() for r in reports],
        }, **JSON_KW))
    else:
        lines = []
        for r in reports:
            lines.extend(r.render_lines())
        _emit(args, "\n".join(lines))
    return 0 if ok else 1


def cmd_numcheck(args) -> int:
    modulus = args.modulus
    if args.scenario:
        scenario = load_scenario(args.scenario)
        modulus = scenario.modulus or modulus
    rows = run_numeric_checks(modulus)
    ok = all(r.ok for r in rows)
    if args.json:
        _emit(args, json.dumps({
            "schema": "sp4eis-numcheck/1",
            "passed": ok,
            "checks": [r.to_json() for r in rows],
        }, **JSON_KW))
    else:
        lines = [r.render() for r in rows]
        lines.append(f"{'PASS' if ok else 'FAIL'} numcheck overall "
                     f"({sum(r.ok for r in rows)}/{len(rows)})")
        _emit(args, "\n".join(lines))
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sp4eis",
        description="Pole orders and constant-term images of the two "
                    "degenerate Eisenstein families on Sp(4).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weyl", help="coset tables, negative sets, lengths")
    p.add_argument("--case", choices=["heisenberg", "siegel", "all"], default="all")
    p.add_argument("--full", action="store_true", help="also list the full Weyl group")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", help="write output to a file")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("normfactor", help="inverse normalizing factor of one element")
    p.add_argument("--case", choices=["heisenberg", "siegel"], required=True)
    p.add_argument("--w", required=True, help="element name (id, s, c2s, sc2s / c1, sc1, c2, sc2, c2sc2)")
    p.add_argument("--char-class", choices=["trivial", "quadratic", "other"],
                   help="reduce chi powers for this class")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_normfactor)

    p = sub.add_parser("poles", help="constant-term pole/image report")
    p.add_argument("--scenario", help="TOML scenario file")
    p.add_argument("--case", choices=["heisenberg", "siegel"], default="heisenberg")
    p.add_argument("--char-class", default="trivial")
    p.add_argument("--s0", nargs="*", help="rational points, e.g. 2 -1/2")
    p.add_argument("--place", nargs="*", help="KIND:CLASS:CHOICE, e.g. nonarch:trivial:steinberg")
    p.add_argument("--rules", help="override the local rule table file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("verify", help="run the theorem grids")
    p.add_argument("theorem", nargs="*", help="H+ H- S+ S- (default: all)")
    p.add_argument("--rules", help="override the local rule table file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("numcheck", help="numeric verification battery")
    p.add_argument("--modulus", type=int, default=4, help="quadratic character modulus")
    p.add_argument("--scenario", help="TOML scenario file (modulus override)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_numcheck)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
