"""``mopkit`` command line: verify, average, roots."""

import argparse
import json
import os
import sys
import time

import numpy as np

from . import averages as av
from . import oracles as orc
from .checks import SUITES, failed, fmt, verify
from .errors import MopError, SpecParseError
from .specdoc import load


def _points(text, field):
    if not text:
        return []
    return [field.scalar(t.strip()) for t in text.split(",") if t.strip()]


def _load_spec(path):
    doc = load(path)
    # document defaults yield to the environment overrides
    os.environ.setdefault("MOPKIT_ENUM_CAP", str(doc.enum_cap))
    if "MOPKIT_TOL" in os.environ and doc.data["field"] == "float":
        doc.data["tol"] = float(os.environ["MOPKIT_TOL"])
    return doc, doc.to_spec()


def _emit(report, path):
    text = json.dumps(report, indent=2)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_verify(args):
    doc, spec = _load_spec(args.spec)
    records = verify(spec, args.suite, doc.chain() or None)
    bad = failed(records)
    report = {"spec": args.spec, "suite": args.suite, "field": spec.field.name,
              "records": records, "failures": len(bad),
              "skipped": sum(r["equal"] is None for r in records)}
    _emit(report, args.report)
    for r in bad:
        print(f"FAIL {r['check']}: {r.get('note', '')} {r['inputs']}", file=sys.stderr)
    return 1 if bad else 0


def cmd_average(args):
    doc, spec = _load_spec(args.spec)
    f = spec.field
    ys, zs = _points(args.ys, f), _points(args.zs, f)
    chain = doc.chain() or None
    methods = {"formula": lambda: av.avg_general(spec, ys, zs, chain),
               "enumerate": lambda: orc.oracle_enumerate(spec, ys, zs),
               "andreief": lambda: orc.oracle_andreief(spec, ys, zs)}
    chosen = list(methods) if args.method == "all" else [args.method]
    records, values = [], {}
    for name in chosen:
        t0 = time.perf_counter()
        values[name] = methods[name]()
        records.append({"check": f"average_{name}", "anchor": "average of products and ratios",
                        "inputs": {"ys": fmt(ys), "zs": fmt(zs)}, "lhs": fmt(values[name]),
                        "rhs": None, "equal": None, "max_error": None,
                        "runtime": time.perf_counter() - t0})
    ok = True
    if len(values) > 1:
        ref = values[chosen[0]]
        for rec, name in zip(records, chosen):
            rec["rhs"] = fmt(ref)
            rec["equal"] = bool(f.eq(values[name], ref))
            rec["max_error"] = abs(complex(values[name]) - complex(ref))
            ok = ok and rec["equal"]
    _emit({"spec": args.spec, "method": args.method, "value": fmt(values[chosen[0]]),
           "records": records}, args.report)
    return 0 if ok else 1


def cmd_roots(args):
    _, spec = _load_spec(args.spec)
    coeffs = av.char_poly_coeffs(spec)
    roots = np.roots([complex(c) for c in reversed(coeffs)])
    roots = sorted(roots, key=lambda r: (round(r.real, 12), r.imag))
    _emit({"spec": args.spec, "approximate": True, "method": "companion matrix eigenvalues",
           "coefficients": fmt(coeffs), "roots": [fmt(complex(r)) for r in roots]}, args.report)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="mopkit", description="Exact averages for multiple orthogonal polynomial ensembles.")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run identity checks on an ensemble document")
    v.add_argument("spec")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--report", help="write the JSON report here instead of stdout")
    v.set_defaults(func=cmd_verify)
    a = sub.add_parser("average", help="average of products/ratios of characteristic polynomials")
    a.add_argument("spec")
    a.add_argument("--ys", default="", help="comma-separated points, e.g. 0,1/2")
    a.add_argument("--zs", default="", help="comma-separated points off the support")
    a.add_argument("--method", choices=("formula", "enumerate", "andreief", "all"), default="formula")
    a.add_argument("--report")
    a.set_defaults(func=cmd_average)
    r = sub.add_parser("roots", help="approximate zeros of the average characteristic polynomial")
    r.add_argument("spec")
    r.add_argument("--report")
    r.set_defaults(func=cmd_roots)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"mopkit: {args.spec}: {exc}", file=sys.stderr)
        return 2
    except MopError as exc:
        extra = f" (value {exc.point})" if getattr(exc, "point", None) is not None else ""
        print(f"mopkit: {type(exc).__name__}: {exc}{extra}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"mopkit: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
