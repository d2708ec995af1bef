"""Command line front end.

Every command prints compact JSON on stdout (or a readable rendering
under --text) and exits with 0 for success or an affirmative verdict,
1 for a well-formed negative verdict, 2 for malformed input, and 3 for
an internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import microlocal, sheaf1
from .cfun import (
    ConstructibleFunction,
    direction_sweep,
    euler_convolve_at,
    invertibility_check_cf,
)
from .dsl import eval_text
from .errors import InputError, InvariantViolation, NotInvertible
from .oracle import validate_table
from .rational import fmt_rat, parse_rat
from .region import region_from_json, region_to_json

_MAKERS = {"cc": sheaf1.kc, "co": sheaf1.kco, "oc": sheaf1.koc, "oo": sheaf1.ko}
_ATOMS = {"cc": "kc", "co": "kco", "oc": "koc", "oo": "ko"}


def sheaf_to_json(f: sheaf1.Sheaf1) -> dict:
    return {
        "generators": [
            {
                "lo": fmt_rat(g.interval.lo),
                "hi": fmt_rat(g.interval.hi),
                "closure": g.interval.closure.name.lower(),
                "shift": g.shift,
                "mult": g.mult,
            }
            for g in f.gens
        ]
    }


def sheaf_from_json(obj) -> sheaf1.Sheaf1:
    if not isinstance(obj, dict) or set(obj) != {"generators"}:
        raise InputError('expected an object with a single "generators" list')
    gens = obj["generators"]
    if not isinstance(gens, list):
        raise InputError('"generators" must be a list')
    parts = []
    for item in gens:
        if not isinstance(item, dict) or set(item) != {"lo", "hi", "closure", "shift", "mult"}:
            raise InputError("generator needs exactly lo, hi, closure, shift, mult")
        if not isinstance(item["lo"], str) or not isinstance(item["hi"], str):
            raise InputError("endpoints must be rational strings")
        if item["closure"] not in _MAKERS:
            raise InputError(f"unknown closure {item['closure']!r}")
        for key in ("shift", "mult"):
            if not isinstance(item[key], int) or isinstance(item[key], bool):
                raise InputError(f"{key} must be an integer")
        maker = _MAKERS[item["closure"]]
        parts.append(
            maker(parse_rat(item["lo"]), parse_rat(item["hi"]),
                  shift=item["shift"], mult=item["mult"])
        )
    return sheaf1.direct_sum(*parts)


def sheaf_to_expr(f: sheaf1.Sheaf1) -> str:
    """Render a canonical object back into the expression language."""
    parts = []
    for g in f.gens:
        iv = g.interval
        if iv.is_point:
            core = f"dirac({fmt_rat(iv.lo)})"
        else:
            name = _ATOMS[iv.closure.name.lower()]
            core = f"{name}({fmt_rat(iv.lo)},{fmt_rat(iv.hi)})"
        if g.shift:
            core = f"shift({core},{g.shift})"
        parts.extend([core] * g.mult)
    if not parts:
        return "zero"
    if len(parts) == 1:
        return parts[0]
    return "sum(" + ",".join(parts) + ")"


def sheaf_to_text(f: sheaf1.Sheaf1) -> str:
    parts = []
    for g in f.gens:
        iv = g.interval
        if iv.is_point:
            core = f"k{{{fmt_rat(iv.lo)}}}"
        else:
            lb = "[" if iv.closure.name[0] == "C" else "]"
            rb = "]" if iv.closure.name[1] == "C" else "["
            core = f"k{lb}{fmt_rat(iv.lo)},{fmt_rat(iv.hi)}{rb}"
        if g.shift:
            core += f"[{g.shift}]"
        if g.mult != 1:
            core = f"{g.mult}*{core}"
        parts.append(core)
    return " ⊕ ".join(parts) if parts else "0"


def _emit(obj) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def _vec_json(v) -> list:
    return [fmt_rat(c) for c in v]


def _graded_json(dims: dict) -> dict:
    return {str(d): dims[d] for d in sorted(dims)}


# ---------------------------------------------------------------------------
# command handlers


def _cmd_eval(args) -> int:
    f = eval_text(args.expr)
    if args.text:
        print(sheaf_to_text(f))
    else:
        _emit(sheaf_to_json(f))
    return 0


def _cmd_invert(args) -> int:
    g = sheaf1.inverse(eval_text(args.expr))
    _emit(sheaf_to_json(g))
    return 0


def _cmd_check(args) -> int:
    f = eval_text(args.expr)
    invertible, reason = sheaf1.is_invertible(f)
    necessary, detail = microlocal.b_necessary_check(f)
    # the condition is one-sided: passing it proves nothing, but an
    # invertible object that fails it would contradict the calculus
    consistent = necessary or not invertible
    _emit(
        {
            "invertible": invertible,
            "reason": reason,
            "necessary_check": necessary,
            "consistent": consistent,
            "detail": detail,
        }
    )
    if not consistent:
        return 3
    return 0 if invertible else 1


def _cmd_btrans(args) -> int:
    _emit(microlocal.b_transform(eval_text(args.expr)).to_json())
    return 0


def _cmd_cc(args) -> int:
    _emit(microlocal.cc(eval_text(args.expr)).to_json())
    return 0


def _cmd_ss(args) -> int:
    _emit(microlocal.ss(eval_text(args.expr)).to_json())
    return 0


def _cmd_stalk(args) -> int:
    f = eval_text(args.expr)
    t = parse_rat(args.at)
    _emit({"at": fmt_rat(t), "stalk": _graded_json(sheaf1.stalk(f, t))})
    return 0


def _fmt_probe_at(at) -> object:
    if isinstance(at, tuple):
        return [fmt_rat(c) for c in at]
    return fmt_rat(at)


def _cmd_table(args) -> int:
    report = validate_table(trials=args.trials, seed=args.seed)
    _emit(
        {
            "trials": report["trials"],
            "seed": report["seed"],
            "count": report["count"],
            "failures": [
                {
                    "trial": d["trial"],
                    "pair": d["pair"],
                    "probe": d["kind"],
                    "at": _fmt_probe_at(d["at"]),
                    "expected": _graded_json(d["expected"]),
                    "got": _graded_json(d["got"]),
                }
                for d in report["discrepancies"]
            ],
        }
    )
    return 0 if report["count"] == 0 else 1


def _load_region(path: str):
    try:
        with open(path, "rb") as fh:
            data = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e
    return region_from_json(data)


def _cmd_region_check(args) -> int:
    res = invertibility_check_cf(_load_region(args.file))
    if res["invertible"]:
        _emit(
            {
                "invertible": True,
                "d": res["d"],
                "hull": [_vec_json(v) for v in res["hull"].verts],
                "inverse": region_to_json(res["inverse"].region),
            }
        )
        return 0
    wit = res["witness"]
    _emit(
        {
            "invertible": False,
            "witness": {k: _vec_json(v) for k, v in wit.items()},
            "direction": list(res["direction"]) if res["direction"] else None,
            "slice_at": fmt_rat(res["slice_at"]) if res["slice_at"] is not None else None,
            "slice_chi": res["slice_chi"],
        }
    )
    return 1


def _cmd_region_conv(args) -> int:
    f = ConstructibleFunction(_load_region(args.file_f))
    g = ConstructibleFunction(_load_region(args.file_g))
    coords = args.at.split(",")
    t = tuple(parse_rat(c.strip()) for c in coords)
    value = euler_convolve_at(f, g, t)
    _emit({"at": _vec_json(t), "value": value})
    return 0


def _cmd_region_sweep(args) -> int:
    report = direction_sweep(_load_region(args.file), max_coeff=args.max_coeff)
    _emit(report)
    return 0 if report["all_pass"] else 1


# ---------------------------------------------------------------------------
# wiring


def _add_expr(p: argparse.ArgumentParser) -> None:
    p.add_argument("-e", "--expr", required=True, help="expression to evaluate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sheafconv",
        description="exact convolution calculus for interval sheaves and "
        "polytopal constructible functions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression to canonical form")
    _add_expr(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="text", action="store_false", default=False)
    fmt.add_argument("--text", dest="text", action="store_true")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("invert", help="convolution inverse, or reason it fails")
    _add_expr(p)
    p.set_defaults(fn=_cmd_invert)

    p = sub.add_parser("check", help="invertibility verdict plus the necessary condition")
    _add_expr(p)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("btrans", help="microlocal transform")
    _add_expr(p)
    p.set_defaults(fn=_cmd_btrans)

    p = sub.add_parser("cc", help="characteristic cycle")
    _add_expr(p)
    p.set_defaults(fn=_cmd_cc)

    p = sub.add_parser("ss", help="singular support")
    _add_expr(p)
    p.set_defaults(fn=_cmd_ss)

    p = sub.add_parser("stalk", help="stalk dimensions at a point")
    _add_expr(p)
    p.add_argument("--at", required=True, help="rational point")
    p.set_defaults(fn=_cmd_stalk)

    p = sub.add_parser("table", help="cross-check the convolution table against the oracles")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_table)

    region = sub.add_parser("region", help="constructible functions on R^n")
    rsub = region.add_subparsers(dest="region_command", required=True)

    p = rsub.add_parser("check", help="invertibility of an indicator region")
    p.add_argument("file", help="region JSON file")
    p.set_defaults(fn=_cmd_region_check)

    p = rsub.add_parser("conv", help="Euler convolution of two regions at a point")
    p.add_argument("file_f", help="region JSON file")
    p.add_argument("file_g", help="region JSON file")
    p.add_argument("--at", required=True, help="comma-separated rational coordinates")
    p.set_defaults(fn=_cmd_region_conv)

    p = rsub.add_parser("sweep", help="classify pushforward shadows along many directions")
    p.add_argument("file", help="region JSON file")
    p.add_argument("--max-coeff", type=int, default=5)
    p.set_defaults(fn=_cmd_region_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NotInvertible as e:
        _emit({"invertible": False, "reason": e.reason})
        return 1
    except InputError as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 2
    except InvariantViolation as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 3


def run() -> None:
    sys.exit(main())
