"""Command line front end. Every record is one JSON object per line."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from . import search, theta
from .errors import PreconditionError
from .lattice import lattice_info, discriminant_group
from .named import format_spec, parse_lattice
from .reidtai import IsotropyElement, group_verdict, modified_rt_sum
from .roots import classify_root_subsystem, vectors_of_norm

SCHEMA_VERSION = "1"
WORKERS_ENV = "K3LATTICE_WORKERS"
DEFAULT_DMAX = 250


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


class Emitter:
    def __init__(self, command: str, fmt: str, out=None):
        self.command = command
        self.fmt = fmt
        self.out = out or sys.stdout

    def __call__(self, payload: Dict) -> None:
        payload = _jsonable(payload)
        if self.fmt == "json":
            rec = {"schema_version": SCHEMA_VERSION, "command": self.command, "payload": payload}
            line = json.dumps(rec, sort_keys=True, separators=(",", ":"))
        else:
            line = "  ".join(f"{k}={json.dumps(v, separators=(',', ':'))}" for k, v in payload.items())
        print(line, file=self.out)


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _ordered_map(fn: Callable, items: Sequence) -> Iterable:
    """Map preserving input order, optionally across processes."""
    n = _workers()
    if n == 1 or len(items) < 2:
        return map(fn, items)
    pool = ProcessPoolExecutor(max_workers=n)
    try:
        return list(pool.map(fn, items))
    finally:
        pool.shutdown()


def _params(pairs: Optional[List[str]]) -> Dict[str, int]:
    out = {}
    for p in pairs or []:
        name, _, value = p.partition("=")
        if not value:
            raise PreconditionError(f"--param expects name=value, got {p!r}")
        out[name] = int(value)
    return out


# --- subcommand handlers ----------------------------------------------------

def cmd_lattice_info(args, emit):
    L = parse_lattice(args.spec, **_params(args.param))
    info = lattice_info(L)
    D = discriminant_group(L)
    emit({
        "spec": format_spec(L),
        "rank": L.rank,
        "det": info.det,
        "abs_det": info.abs_det,
        "signature": list(info.signature),
        "even": info.even,
        "discriminant": {
            "invariant_factors": list(D.invariant_factors),
            "qform_values": list(D.qform_values),
            "modulus": D.modulus,
        },
    })


def cmd_roots(args, emit):
    L = parse_lattice(args.spec, **_params(args.param))
    vecs = vectors_of_norm(L, args.norm)
    for v in vecs:
        emit({"coords": list(v.coords), "norm": v.norm})
    summary = {"count": len(vecs), "summary": True}
    if args.norm == 2:
        summary["root_system"] = str(classify_root_subsystem(vecs))
    emit(summary)


def _k3_row(d: int) -> Dict:
    v = search.classify("K3", d)
    return {"d": d, **v.to_dict()}


def cmd_k3_search(args, emit):
    w = search.k3_search(args.d, args.min_roots, args.max_roots)
    emit({"d": args.d, "found": w is not None, "witness": w.to_dict() if w else None})


def cmd_k3_classify(args, emit):
    if args.dmin < 1 or args.dmax < args.dmin:
        raise PreconditionError("need 1 <= dmin <= dmax")
    for row in _ordered_map(_k3_row, list(range(args.dmin, args.dmax + 1))):
        emit(row)


def cmd_hilb2_classify(args, emit):
    case = "Hilb2Split" if args.split else "Hilb2NonSplit"
    v = search.classify(case, args.d)
    emit({"d": args.d, "case": case, **v.to_dict()})


def cmd_ineq_scan(args, emit):
    if args.dmax is None:
        args.dmax = DEFAULT_DMAX
        print(f"warning: no --dmax given, scanning d <= {DEFAULT_DMAX}; "
              "the failure set is finite but no bound for it is known a priori",
              file=sys.stderr)
    if args.dmax < 1:
        raise PreconditionError("--dmax must be >= 1")
    fails = theta.mainineq_failure_scan(args.dmax)
    for d in range(1, args.dmax + 1):
        c = theta.mainineq_check(d)
        emit({"d": d, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds})
    emit({"summary": True, "dmax": args.dmax, "failures": len(fails),
          "max_failure": max(fails) if fails else None})


def _rt_payload(g: IsotropyElement) -> Dict:
    r = modified_rt_sum(g)
    return {
        "order": g.order,
        "exponents": list(g.exponents),
        "sigma": r.sigma,
        "sigma_prime": r.sigma_prime,
        "is_quasi_reflection": r.is_quasi_reflection,
        "is_reflection": r.is_reflection,
        "passes": r.passes,
    }


def cmd_reidtai(args, emit):
    if args.group:
        with open(args.group) as fh:
            data = json.load(fh)
        elems = [IsotropyElement(e["order"], e["exponents"]) for e in data]
        for g in elems:
            emit(_rt_payload(g))
        emit({"summary": True, "verdict": group_verdict(elems, not args.partial)})
        return
    if args.order is None or args.exponents is None:
        raise PreconditionError("give --order and --exponents, or --group FILE")
    try:
        exps = [int(a) for a in args.exponents.split(",") if a.strip()]
    except ValueError as exc:
        raise PreconditionError(f"bad exponent list {args.exponents!r}") from exc
    emit(_rt_payload(IsotropyElement(args.order, exps)))


# --- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3lattice", description=__doc__)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--cache-dir", help="directory for persisted theta tables")
    # same options after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice", help="invariants of a lattice literal").add_subparsers(dest="sub", required=True)
    info = lat.add_parser("info", help="determinant, signature, parity, discriminant group",
                          parents=[common])
    info.add_argument("spec")
    info.add_argument("--param", action="append", metavar="NAME=INT")
    info.set_defaults(func=cmd_lattice_info, name="lattice info")

    roots = sub.add_parser("roots", help="vectors of a given norm in a definite lattice",
                           parents=[common])
    roots.add_argument("spec")
    roots.add_argument("--norm", type=int, default=2)
    roots.add_argument("--param", action="append", metavar="NAME=INT")
    roots.set_defaults(func=cmd_roots, name="roots")

    k3 = sub.add_parser("k3", help="polarised K3 searches and verdicts").add_subparsers(dest="sub", required=True)
    ks = k3.add_parser("search", parents=[common])
    ks.add_argument("-d", type=int, required=True)
    ks.add_argument("--min-roots", type=int, default=2)
    ks.add_argument("--max-roots", type=int, default=12)
    ks.set_defaults(func=cmd_k3_search, name="k3 search")
    kc = k3.add_parser("classify", parents=[common])
    kc.add_argument("--dmin", type=int, required=True)
    kc.add_argument("--dmax", type=int, required=True)
    kc.set_defaults(func=cmd_k3_classify, name="k3 classify")

    h2 = sub.add_parser("hilb2", help="split and non-split K3^[2] verdicts").add_subparsers(dest="sub", required=True)
    hc = h2.add_parser("classify", parents=[common])
    grp = hc.add_mutually_exclusive_group(required=True)
    grp.add_argument("--split", action="store_true")
    grp.add_argument("--nonsplit", action="store_true")
    hc.add_argument("-d", type=int, required=True)
    hc.set_defaults(func=cmd_hilb2_classify, name="hilb2 classify")

    ineq = sub.add_parser("ineq", help="the E7/E6/D6 representation-number inequality").add_subparsers(dest="sub", required=True)
    sc = ineq.add_parser("scan", parents=[common])
    sc.add_argument("--dmax", type=int, default=None)
    sc.set_defaults(func=cmd_ineq_scan, name="ineq scan")

    rt = sub.add_parser("reidtai", help="Reid-Tai sums of finite-order elements",
                        parents=[common])
    rt.add_argument("--order", type=int)
    rt.add_argument("--exponents", help="comma separated a1,...,an")
    rt.add_argument("--group", help="JSON file [{\"order\": m, \"exponents\": [...]}, ...]")
    rt.add_argument("--partial", action="store_true",
                    help="the group file does not list every element")
    rt.set_defaults(func=cmd_reidtai, name="reidtai")
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.cache_dir:
        theta.set_cache_dir(args.cache_dir)
    emit = Emitter(args.name, args.format, out)
    try:
        args.func(args, emit)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
