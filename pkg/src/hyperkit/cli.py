"""Command-line surface: every library operation behind deterministic text or
JSON output.

Exit codes: 0 success, 1 axiom/verification failure, 2 parse or structural
error, 3 unsupported operation, 4 numerical degeneracy.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .amen import am_report
from .builders import hp, conjugacy_hypergroup, group_hypergroup, join, quotient
from .core import FiniteHypergroup
from .errors import (ConsistencyError, InvalidHypergroupError,
                     NumericalDegeneracyError, StructuralError,
                     UnsupportedOperationError)
from .files import (format_scalar, read_cayley_file, read_function_file,
                    read_hypergroup_file, write_hypergroup_file)
from .spectra import DEFAULT_SEED, characters, dual_hypergroup
from .uncertainty import tightness_scan, uncertainty_check

EXIT_OK = 0
EXIT_FAILURE = 1        # axiom or verification failure
EXIT_STRUCTURAL = 2     # parse/structural error
EXIT_UNSUPPORTED = 3
EXIT_DEGENERATE = 4


def _fmt(v, precision: int) -> str:
    if isinstance(v, (Fraction, int)):
        return format_scalar(v)
    if isinstance(v, complex) or isinstance(v, np.complexfloating):
        v = complex(v)
        if v.imag == 0.0 or abs(v.imag) < 10.0 ** (-precision - 3) * max(1.0, abs(v.real)):
            return format(v.real, f".{precision}g")
        return f"{v.real:.{precision}g}{v.imag:+.{precision}g}i"
    return format(float(v), f".{precision}g")


def _json_scalar(v, precision: int):
    if isinstance(v, (Fraction, int)):
        return str(v)
    if isinstance(v, complex) or isinstance(v, np.complexfloating):
        v = complex(v)
        return [float(f"{v.real:.{precision}g}"), float(f"{v.imag:.{precision}g}")]
    return float(f"{float(v):.{precision}g}")


def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _summary_lines(name: str, h: FiniteHypergroup, precision: int) -> list[str]:
    return [
        f"name: {name}",
        f"order: {h.n}  mode: {'exact' if h.exact else 'float'}"
        f"  commutative: {'yes' if h.commutative else 'no'}",
        "elements: " + " ".join(h.elements),
        "haar: " + " ".join(_fmt(v, precision) for v in h.haar),
        "haar total: " + _fmt(h.haar_total, precision),
    ]


def _summary_json(name: str, h: FiniteHypergroup, precision: int) -> dict:
    return {
        "name": name,
        "order": h.n,
        "mode": "exact" if h.exact else "float",
        "commutative": h.commutative,
        "elements": list(h.elements),
        "haar": [_json_scalar(v, precision) for v in h.haar],
        "haar_total": _json_scalar(h.haar_total, precision),
    }


def _load(path: str, mode: str):
    raw = read_hypergroup_file(path, mode=mode)
    return raw.name, raw.to_hypergroup()


def _maybe_emit(ns, h: FiniteHypergroup, name: str) -> None:
    if getattr(ns, "emit", None):
        write_hypergroup_file(h, ns.emit, name=name)


def _table_values(table, i):
    if table.exact:
        return list(table.exact_chars[i])
    return list(table.chars[i])


def _char_lines(name, table, precision) -> list[str]:
    lines = [f"characters of {name} (trivial first):",
             "elements: " + " ".join(table.host.elements)]
    kvals = table.exact_hyperdim if table.exact else table.hyperdim
    for i in range(table.n):
        vals = " ".join(_fmt(v, precision) for v in _table_values(table, i))
        lines.append(f"chi{i}: k={_fmt(kvals[i], precision)}  values: {vals}")
    return lines


def _char_json(name, table, precision) -> dict:
    kvals = table.exact_hyperdim if table.exact else table.hyperdim
    return {
        "name": name,
        "mode": "exact" if table.exact else "float",
        "elements": list(table.host.elements),
        "haar": [_json_scalar(v, precision) for v in table.host.haar],
        "characters": [
            {"index": i,
             "k": _json_scalar(kvals[i], precision),
             "values": [_json_scalar(v, precision) for v in _table_values(table, i)]}
            for i in range(table.n)
        ],
    }


# ----------------------------------------------------------------- commands

def _cmd_validate(ns) -> int:
    raw = read_hypergroup_file(ns.file, mode=ns.mode)
    report = raw.validate()
    if ns.json:
        _emit_json({
            "passed": report.passed,
            "violations": [
                {"axiom": v.axiom, "where": list(v.where), "residual": v.residual}
                for v in report.violations
            ],
        })
    elif report.passed:
        print("PASSED: all hypergroup axioms hold")
    else:
        print(f"FAILED: {len(report.violations)} violation(s)")
        for v in report.violations[:20]:
            print(f"  {v}")
        if len(report.violations) > 20:
            print(f"  ... and {len(report.violations) - 20} more")
    if report.passed and getattr(ns, "emit", None):
        write_hypergroup_file(raw.to_hypergroup(), ns.emit, name=raw.name)
    return EXIT_OK if report.passed else EXIT_FAILURE


def _cmd_haar(ns) -> int:
    name, h = _load(ns.file, ns.mode)
    if ns.json:
        _emit_json(_summary_json(name, h, ns.precision))
    else:
        for x in range(h.n):
            print(f"{h.elements[x]} {_fmt(h.haar[x], ns.precision)}")
        print(f"total {_fmt(h.haar_total, ns.precision)}")
    _maybe_emit(ns, h, name)
    return EXIT_OK


def _cmd_chars(ns) -> int:
    name, h = _load(ns.file, ns.mode)
    table = characters(h, seed=ns.seed)
    if ns.json:
        _emit_json(_char_json(name, table, ns.precision))
    else:
        print("\n".join(_char_lines(name, table, ns.precision)))
    _maybe_emit(ns, h, name)
    return EXIT_OK


def _cmd_dual(ns) -> int:
    name, h = _load(ns.file, ns.mode)
    table = characters(h, seed=ns.seed)
    result = dual_hypergroup(table)
    if not result.is_hypergroup:
        i, j, k, value = result.obstruction
        if ns.json:
            _emit_json({"dual": None,
                        "obstruction": {"i": i, "j": j, "k": k,
                                        "coefficient": _json_scalar(value, ns.precision)}})
        else:
            print(f"OBSTRUCTION: chi{i}*chi{j} has coefficient "
                  f"{_fmt(value, ns.precision)} on chi{k}")
            print("the dual of this hypergroup is not a hypergroup")
        return EXIT_FAILURE
    dual = result.dual
    if ns.json:
        doc = _summary_json(f"dual({name})", dual, ns.precision)
        doc["strong"] = True
        _emit_json(doc)
    else:
        print("\n".join(_summary_lines(f"dual({name})", dual, ns.precision)))
        print("strong: yes (dual Haar equals the hyperdimensions)")
    _maybe_emit(ns, dual, f"dual({name})")
    return EXIT_OK


def _construct_and_report(ns, h: FiniteHypergroup, name: str) -> int:
    if ns.json:
        _emit_json(_summary_json(name, h, ns.precision))
    else:
        print("\n".join(_summary_lines(name, h, ns.precision)))
    _maybe_emit(ns, h, name)
    return EXIT_OK


def _cmd_group(ns) -> int:
    t = read_cayley_file(ns.cayley)
    return _construct_and_report(ns, group_hypergroup(t), f"group({ns.cayley})")


def _cmd_conj(ns) -> int:
    t = read_cayley_file(ns.cayley)
    return _construct_and_report(ns, conjugacy_hypergroup(t), f"conj({ns.cayley})")


def _cmd_hp(ns) -> int:
    p = ns.p if ns.mode == "exact" else float(Fraction(ns.p))
    return _construct_and_report(ns, hp(p), f"H_{ns.p}")


def _cmd_join(ns) -> int:
    name_k, hk = _load(ns.fileK, ns.mode)
    name_j, hj = _load(ns.fileJ, ns.mode)
    return _construct_and_report(ns, join(hk, hj), f"{name_k}_v_{name_j}")


def _cmd_quotient(ns) -> int:
    name, h = _load(ns.file, ns.mode)
    labels = [s.strip() for s in ns.sub.split(",") if s.strip()]
    subset = [h.index(s) for s in labels]
    q, proj = quotient(h, subset)
    code = _construct_and_report(ns, q, f"{name}/{{{','.join(labels)}}}")
    if not ns.json:
        print("projection: " + " ".join(
            f"{h.elements[x]}->{q.elements[proj[x]]}" for x in range(h.n)))
    return code


def _cmd_am(ns) -> int:
    name, h = _load(ns.file, ns.mode)
    table = characters(h, seed=ns.seed)
    report = am_report(table)
    if ns.json:
        _emit_json({
            "name": name,
            "am": _json_scalar(report.am, ns.precision),
            "exact": isinstance(report.am, Fraction),
            "residual_identity": report.residual_identity,
            "residual_commute": report.residual_commute,
        })
    else:
        print(_fmt(report.am, ns.precision))
    _maybe_emit(ns, h, name)
    return EXIT_OK


def _cmd_uncertainty(ns) -> int:
    name, h = _load(ns.file, ns.mode)
    table = characters(h, seed=ns.seed)
    f = read_function_file(ns.fn, h)
    rep = uncertainty_check(table, f)
    if ns.json:
        _emit_json({
            "name": name,
            "support_size": _json_scalar(rep.support_size, ns.precision),
            "dual_mass": _json_scalar(rep.dual_mass, ns.precision),
            "lhs": _json_scalar(rep.lhs, ns.precision),
            "ratio": _json_scalar(rep.ratio, ns.precision),
            "holds": rep.holds,
        })
    else:
        print(f"lambda(H) = {_fmt(rep.lhs, ns.precision)}")
        print(f"lambda(supp f) = {_fmt(rep.support_size, ns.precision)}")
        print(f"dual mass = {_fmt(rep.dual_mass, ns.precision)}")
        print(f"ratio = {_fmt(rep.ratio, ns.precision)}")
        print(f"holds: {'yes' if rep.holds else 'no'}")
    _maybe_emit(ns, h, name)
    return EXIT_OK if rep.holds else EXIT_FAILURE


def _cmd_scan(ns) -> int:
    name, h = _load(ns.file, ns.mode)
    table = characters(h, seed=ns.seed)
    res = tightness_scan(table, n_random=ns.random, seed=ns.seed)
    if ns.json:
        _emit_json({
            "name": name,
            "best_ratio": _json_scalar(res.best_ratio, ns.precision),
            "witness": res.best_description,
            "evaluated": res.evaluated,
        })
    else:
        print(f"best ratio: {_fmt(res.best_ratio, ns.precision)}")
        print(f"witness: {res.best_description}")
        print(f"candidates evaluated: {res.evaluated}")
    _maybe_emit(ns, h, name)
    return EXIT_OK


def _cmd_fourier(ns) -> int:
    name, h = _load(ns.file, ns.mode)
    table = characters(h, seed=ns.seed)
    f = read_function_file(ns.fn, h)
    from .spectra import fourier as _fourier
    coeff = _fourier(table, f)
    if ns.json:
        _emit_json({
            "name": name,
            "coefficients": [_json_scalar(v, ns.precision) for v in coeff],
        })
    else:
        for i, v in enumerate(coeff):
            print(f"chi{i} {_fmt(v, ns.precision)}")
    _maybe_emit(ns, h, name)
    return EXIT_OK


# ------------------------------------------------------------------- parser

def _add_common(sp, *, emit=True):
    sp.add_argument("--mode", choices=["exact", "float"], default="exact",
                    help="arithmetic mode for parsing and checks (default exact)")
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                    help="seed for the eigen-combination and random-function draws")
    sp.add_argument("--precision", type=int, default=12,
                    help="significant digits for float output (default 12)")
    sp.add_argument("--json", action="store_true", help="machine-readable output")
    if emit:
        sp.add_argument("--emit", metavar="OUT.hgf",
                        help="write the constructed/loaded hypergroup to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperkit",
        description="Finite hypergroup toolkit: validation, Haar measures, "
                    "character tables, duals, amenability, uncertainty.")
    parser.add_argument("--version", action="version", version=f"hyperkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check a .hgf file against the axioms")
    sp.add_argument("file")
    _add_common(sp)
    sp.set_defaults(func=_cmd_validate)

    sp = sub.add_parser("haar", help="Haar weights of a hypergroup file")
    sp.add_argument("file")
    _add_common(sp)
    sp.set_defaults(func=_cmd_haar)

    sp = sub.add_parser("chars", help="character table with hyperdimensions")
    sp.add_argument("file")
    _add_common(sp)
    sp.set_defaults(func=_cmd_chars)

    sp = sub.add_parser("dual", help="dual hypergroup or the negativity obstruction")
    sp.add_argument("file")
    _add_common(sp)
    sp.set_defaults(func=_cmd_dual)

    sp = sub.add_parser("group", help="hypergroup of a group from a Cayley table")
    sp.add_argument("--cayley", required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_group)

    sp = sub.add_parser("conj", help="conjugacy-class hypergroup from a Cayley table")
    sp.add_argument("--cayley", required=True)
    _add_common(sp)
    sp.set_defaults(func=_cmd_conj)

    sp = sub.add_parser("hp", help="the two-element family H_p")
    sp.add_argument("--p", required=True, help="rational parameter p >= 1, e.g. 2 or 5/2")
    _add_common(sp)
    sp.set_defaults(func=_cmd_hp)

    sp = sub.add_parser("join", help="hypergroup join K v J of two files")
    sp.add_argument("fileK")
    sp.add_argument("fileJ")
    _add_common(sp)
    sp.set_defaults(func=_cmd_join)

    sp = sub.add_parser("quotient", help="quotient by a subhypergroup")
    sp.add_argument("file")
    sp.add_argument("--sub", required=True,
                    help="comma-separated element labels of the subhypergroup")
    _add_common(sp)
    sp.set_defaults(func=_cmd_quotient)

    sp = sub.add_parser("am", help="amenability constant of l^1(H, lambda)")
    sp.add_argument("file")
    _add_common(sp)
    sp.set_defaults(func=_cmd_am)

    sp = sub.add_parser("uncertainty", help="support inequality report for a function")
    sp.add_argument("file")
    sp.add_argument("--fn", required=True, help="function file (JSON)")
    _add_common(sp)
    sp.set_defaults(func=_cmd_uncertainty)

    sp = sub.add_parser("scan", help="tightness scan of the support inequality")
    sp.add_argument("file")
    sp.add_argument("--random", type=int, default=200,
                    help="number of random sparse candidates (default 200)")
    _add_common(sp)
    sp.set_defaults(func=_cmd_scan)

    sp = sub.add_parser("fourier", help="Fourier coefficients of a function")
    sp.add_argument("file")
    sp.add_argument("--fn", required=True, help="function file (JSON)")
    _add_common(sp)
    sp.set_defaults(func=_cmd_fourier)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    env_seed = os.environ.get("HYPERKIT_SEED")
    if env_seed is not None and hasattr(ns, "seed"):
        try:
            ns.seed = int(env_seed, 0)
        except ValueError:
            print(f"error: HYPERKIT_SEED={env_seed!r} is not an integer", file=sys.stderr)
            return EXIT_STRUCTURAL
    try:
        return ns.func(ns)
    except InvalidHypergroupError as err:
        print(f"axiom failure: {err}", file=sys.stderr)
        return EXIT_FAILURE
    except ConsistencyError as err:
        print(f"verification failure: {err}", file=sys.stderr)
        return EXIT_FAILURE
    except StructuralError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_STRUCTURAL
    except UnsupportedOperationError as err:
        print(f"unsupported: {err}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except NumericalDegeneracyError as err:
        print(f"numerical degeneracy: {err}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
