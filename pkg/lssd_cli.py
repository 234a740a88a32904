"""
Command-line front end: construct, verify, screen and convert LSSDs.

Exit status: 0 success, 1 verification failure, infeasible or refused input,
2 usage, format or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, cast

from feasibility import bounds, integrality_screen, screen_family
from geometry import equiangular_gram, mub_gram
from gf2kerdock import (
    DEFAULT_SEARCH_BUDGET,
    KerdockFamily,
    cameron_seidel_lssd,
    reference_kerdock_n4,
    search_kerdock_family,
)
from hadamard_oa import (
    UnbiasedHadamardSet,
    beth_wocjan_unbiased_set,
    hadamards_from_lssd,
    lssd_from_unbiased_hadamards,
    reference_h4,
    reference_oa16,
)
from lssd_core import FormatError, InvalidParametersError, LssdError
from lssd_designs import DesignParams
from lssd_scheme import format_tables, scheme_tables, verify_scheme
from lssd_system import (
    DEFAULT_WORKERS,
    LssdGraph,
    LssdReport,
    classify,
    degenerate_lssd,
    verify_lssd,
)
from save_load import (
    Settings,
    dumps_gram,
    dumps_lssd,
    load_hadamard,
    load_lssd,
    load_oa,
    load_settings,
    save_gram,
    save_hadamard,
    save_lssd,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

Handler = Callable[[argparse.Namespace, Settings], int]


# --- parser ---
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lssd-cli",
        description="Construct and verify linked systems of symmetric designs.",
    )
    _ = parser.add_argument("--json", action="store_true", help="Print machine-readable JSON")
    _ = parser.add_argument("--log-level", help="Logging level (DEBUG, INFO, WARNING, ...)")
    _ = parser.add_argument("-v", "--verbose", action="count", default=0, help="More logging")
    _ = parser.add_argument("--config", help="INI settings file (see lssd.ini)")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    construct = subparsers.add_parser("construct", help="Build an LSSD and write it as JSON")
    routes = construct.add_subparsers(dest="route", help="Construction route")
    kerdock = routes.add_parser("kerdock", help="Cameron-Seidel construction from Kerdock forms")
    _ = kerdock.add_argument("--n", type=int, required=True, help="Even dimension of Z_2^n")
    _ = kerdock.add_argument("--w", type=int, required=True, help="Number of fibers")
    _ = kerdock.add_argument(
        "--reference-family", action="store_true", help="Use the eight reference forms (n = 4)"
    )
    _ = kerdock.add_argument("--budget", type=int, help="Search budget in candidate forms")
    bw = routes.add_parser("beth-wocjan", help="Orthogonal array plus regular Hadamard matrix")
    _ = bw.add_argument("--oa", help="Orthogonal array text file")
    _ = bw.add_argument("--hadamard", help="Hadamard text file")
    _ = bw.add_argument(
        "--reference-example", action="store_true", help="Use the embedded 16 x 3 array and H4"
    )
    degenerate = routes.add_parser("degenerate", help="Identity matchings, LSSD(v,1,0;w)")
    _ = degenerate.add_argument("--v", type=int, required=True)
    _ = degenerate.add_argument("--w", type=int, required=True)
    from_h = routes.add_parser("from-hadamards", help="LSSD from unbiased regular Hadamards")
    _ = from_h.add_argument("files", nargs="+", help="Hadamard text files")
    for sub in (kerdock, bw, degenerate, from_h):
        _ = sub.add_argument("--out", help="Output JSON file (default: standard output)")

    verify = subparsers.add_parser("verify", help="Verify an LSSD JSON document")
    _ = verify.add_argument("graph", help="LSSD JSON file")
    _ = verify.add_argument("--scheme", action="store_true", help="Also verify the scheme")
    _ = verify.add_argument("--workers", type=int, help="Threads for fiber-triple checks")

    verify_oa = subparsers.add_parser("verify-oa", help="Check an orthogonal array file")
    _ = verify_oa.add_argument("file", help="Orthogonal array text file")

    screen = subparsers.add_parser("screen", help="Integrality screen of parameters or families")
    target = screen.add_mutually_exclusive_group(required=True)
    _ = target.add_argument("--params", help="Parameters v,k,l")
    _ = target.add_argument("--family", type=int, help="Family number 1..21")
    _ = screen.add_argument("--range", help="Primary index range A..B")
    _ = screen.add_argument(
        "--set", action="append", default=[], metavar="NAME=VALUE", help="Fix another index"
    )

    bnd = subparsers.add_parser("bounds", help="Upper bounds on the number of fibers")
    _ = bnd.add_argument("--params", required=True, help="Parameters v,k,l")
    _ = bnd.add_argument("--tight", action="store_true", help="Assume q_11^1 = 0")

    derive = subparsers.add_parser("derive", help="Derived geometric structures")
    kinds = derive.add_subparsers(dest="kind", help="What to derive")
    lines = kinds.add_parser("lines", help="Equiangular line Gram matrix")
    _ = lines.add_argument("--t", type=int, required=True, help="Number of fibers used")
    _ = lines.add_argument("graph")
    _ = lines.add_argument("--out", help="Gram JSON file")
    mub = kinds.add_parser("mub-gram", help="Gram matrix of the w real bases")
    _ = mub.add_argument("graph")
    _ = mub.add_argument("--out", help="Gram JSON file")
    had = kinds.add_parser("hadamards", help="Unbiased Hadamard matrices of a Menon system")
    _ = had.add_argument("graph")
    _ = had.add_argument("--out", required=True, help="Output directory")
    return parser


# --- helpers ---
def _parse_params(text: str) -> DesignParams:
    try:
        return DesignParams.parse(text)
    except InvalidParametersError:
        raise
    except ValueError as e:
        raise FormatError(f"parameters must be 'v,k,l', got {text!r}", "params") from e


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError(text)
        return range(int(lo), int(hi) + 1)
    except ValueError as e:
        raise FormatError(f"range must look like A..B, got {text!r}", "range") from e


def _parse_fixed(items: Sequence[str]) -> dict[str, int]:
    fixed: dict[str, int] = {}
    for item in items:
        name, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError(item)
            fixed[name.strip()] = int(value)
        except ValueError as e:
            raise FormatError(f"--set expects NAME=VALUE, got {item!r}", "set") from e
    return fixed


def _params_record(p: DesignParams) -> dict[str, Any]:
    return {"v": p.v, "k": p.k, "lambda": p.lam, "s": p.s}


def _emit(args: argparse.Namespace, record: dict[str, Any], lines: Sequence[str]) -> None:
    if cast(bool, args.json):
        print(json.dumps(record, sort_keys=True, default=str))
    else:
        for line in lines:
            print(line)


def _report_lines(report: LssdReport) -> list[str]:
    lines = [
        f"LSSD{report.params} w={report.w}",
        f"  axiom (i)   {'ok' if report.axiom_i_ok else 'FAILED'}",
        f"  axiom (ii)  {'ok' if report.axiom_ii_ok else 'FAILED'}",
        f"  axiom (iii) {'ok' if report.axiom_iii_ok else 'FAILED'}",
    ]
    if report.observed_mu is not None:
        lines.append(f"  mu={report.observed_mu} nu={report.observed_nu}")
    if report.lssd_class is not None:
        lines.append(f"  class: {report.lssd_class}")
    lines += [f"  failure: {f}" for f in report.failures]
    lines += [f"  note: {n}" for n in report.notes]
    return lines


def _report_record(report: LssdReport) -> dict[str, Any]:
    return {
        "params": _params_record(report.params),
        "w": report.w,
        "ok": report.ok,
        "axioms": [report.axiom_i_ok, report.axiom_ii_ok, report.axiom_iii_ok],
        "mu": report.observed_mu,
        "nu": report.observed_nu,
        "class": str(report.lssd_class) if report.lssd_class else None,
        "failures": [str(f) for f in report.failures],
        "notes": list(report.notes),
    }


def _write_graph(args: argparse.Namespace, g: LssdGraph, settings: Settings) -> int:
    report = verify_lssd(g, settings.workers or DEFAULT_WORKERS)
    if not report.ok:
        print(f"Constructed system failed verification: {report.failures[0]}", file=sys.stderr)
        return EXIT_FAIL
    out = cast(str | None, args.out)
    if out is None:
        sys.stdout.write(dumps_lssd(g))
    else:
        save_lssd(g, out)
        print(f"LSSD{g.params} with w={g.w} written to {out}", file=sys.stderr)
    return EXIT_OK


# --- commands ---
def cmd_construct(args: argparse.Namespace, settings: Settings) -> int:
    route = cast(str | None, args.route)
    if route == "kerdock":
        n, w = cast(int, args.n), cast(int, args.w)
        if cast(bool, args.reference_family):
            if n != 4:
                raise InvalidParametersError(f"the reference forms live on Z_2^4, not n = {n}", "n=4")
            forms = reference_kerdock_n4().forms
            if not 1 <= w <= len(forms):
                raise InvalidParametersError(f"w must lie in 1..{len(forms)}", "w<=8")
            family = KerdockFamily(4, forms[:w])
        else:
            budget = cast(int | None, args.budget) or settings.budget or DEFAULT_SEARCH_BUDGET
            family = search_kerdock_family(n, w, budget)
        g = cameron_seidel_lssd(family)
    elif route == "beth-wocjan":
        if cast(bool, args.reference_example):
            oa, h = reference_oa16(), reference_h4()
        else:
            oa_file, h_file = cast(str | None, args.oa), cast(str | None, args.hadamard)
            if oa_file is None or h_file is None:
                print("beth-wocjan needs --oa and --hadamard, or --reference-example", file=sys.stderr)
                return EXIT_USAGE
            oa, h = load_oa(oa_file), load_hadamard(h_file)
        g = lssd_from_unbiased_hadamards(beth_wocjan_unbiased_set(oa, h))
    elif route == "degenerate":
        g = degenerate_lssd(cast(int, args.v), cast(int, args.w))
    elif route == "from-hadamards":
        matrices = [load_hadamard(f) for f in cast(list[str], args.files)]
        g = lssd_from_unbiased_hadamards(UnbiasedHadamardSet.from_matrices(matrices))
    else:
        print("construct needs a route: kerdock, beth-wocjan, degenerate, from-hadamards", file=sys.stderr)
        return EXIT_USAGE
    return _write_graph(args, g, settings)


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    g = load_lssd(cast(str, args.graph))
    workers = cast(int | None, args.workers) or settings.workers or DEFAULT_WORKERS
    report = verify_lssd(g, workers)
    record = _report_record(report)
    lines = _report_lines(report)
    ok = report.ok
    if cast(bool, args.scheme) and report.ok:
        scheme = verify_scheme(g)
        ok = ok and scheme.ok
        record["scheme"] = {
            "ok": scheme.ok,
            "partition": scheme.partition_ok,
            "algebra": scheme.algebra_ok,
            "q_polynomial": scheme.q_polynomial_ok,
            "krein": scheme.krein_ok,
            "q_antipodal": scheme.q_antipodal_ok,
            "failures": list(scheme.failures),
            "notes": list(scheme.notes),
        }
        lines.append(f"scheme: {'ok' if scheme.ok else 'FAILED'}")
        lines += [f"  failure: {f}" for f in scheme.failures]
        lines += [f"  note: {n}" for n in scheme.notes]
        try:
            lines.append(format_tables(scheme_tables(scheme.params, g.w)))
        except LssdError as e:
            lines.append(f"  tables unavailable: {e}")
    _emit(args, record, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_oa(args: argparse.Namespace, settings: Settings) -> int:
    oa = load_oa(cast(str, args.file))
    bad = oa.first_bad_pair()
    record = {"n": oa.n, "cols": oa.cols, "orthogonal": bad is None}
    if bad is None:
        lines = [f"OA over {oa.n} symbols with {oa.cols} columns: orthogonal"]
    else:
        record["bad_columns"] = [bad[0] + 1, bad[1] + 1]
        lines = [f"columns {bad[0] + 1},{bad[1] + 1} repeat a symbol pair"]
    _emit(args, record, lines)
    return EXIT_OK if bad is None else EXIT_FAIL


def cmd_screen(args: argparse.Namespace, settings: Settings) -> int:
    params_text = cast(str | None, args.params)
    if params_text is not None:
        p = _parse_params(params_text)
        verdict = integrality_screen(*p.as_tuple())
        record = {
            "params": _params_record(p),
            "feasible": verdict.feasible,
            "branch": verdict.branch,
            "failed": list(verdict.notes),
        }
        lines = [f"{p}: {'feasible' if verdict.feasible else 'infeasible'}"]
        lines += [f"  fails: {note}" for note in verdict.notes]
        _emit(args, record, lines)
        return EXIT_OK if verdict.feasible else EXIT_FAIL
    family_id = cast(int, args.family)
    range_text = cast(str | None, args.range)
    index_range = _parse_range(range_text) if range_text else None
    screen = screen_family(family_id, index_range, _parse_fixed(cast(list[str], args.set)))
    rows = [
        {
            "family": family_id,
            "indices": dict(row.spec.indices),
            "v": row.params.v if row.params else None,
            "k": row.params.k if row.params else None,
            "lambda": row.params.lam if row.params else None,
            "verdict": row.status,
            "failed": list(row.failed_conditions),
            "reason": row.reason,
        }
        for row in screen.rows
    ]
    lines = [f"family {family_id}: {screen.verdict}", f"{screen.primary:>6} {'v':>10} {'k':>8} {'lambda':>8}  status"]
    for row in screen.rows:
        p = row.params
        cells = (str(p.v), str(p.k), str(p.lam)) if p else ("-", "-", "-")
        lines.append(
            f"{row.spec.indices[screen.primary]:>6} {cells[0]:>10} {cells[1]:>8} {cells[2]:>8}  "
            + f"{row.status}{': ' + row.reason if row.reason else ''}"
        )
    _emit(args, {"family": family_id, "verdict": screen.verdict, "rows": rows}, lines)
    return EXIT_OK if any(row.status == "pass" for row in screen.rows) else EXIT_FAIL


def cmd_bounds(args: argparse.Namespace, settings: Settings) -> int:
    p = _parse_params(cast(str, args.params))
    report = bounds(p, q111_is_zero=cast(bool, args.tight))
    noda_max = report.noda_w_max(report.absolute_w_max)
    try:
        outlook = str(classify(p))
    except InvalidParametersError:
        outlook = "undefined (2k = v)"
    record = {
        "params": _params_record(p),
        "mu": report.mu_nu.mu,
        "nu": report.mu_nu.nu,
        "class": outlook,
        "krein_w_max": report.krein_w_max,
        "absolute_w_max": report.absolute_w_max,
        "menon_w_max": report.menon_w_max,
        "noda_w_max": noda_max,
        "krein_tight_admissible": report.krein_tight_admissible,
    }
    lines = [
        f"{p}: mu={report.mu_nu.mu} nu={report.mu_nu.nu} ({outlook})",
        f"  Krein bound      w <= {report.krein_w_max if report.krein_w_max is not None else '-'}",
        f"  absolute bound   w <= {report.absolute_w_max}",
        f"  Menon bound      w <= {report.menon_w_max if report.menon_w_max is not None else '-'}",
        f"  Noda inequality  w <= {noda_max if noda_max is not None else '-'}",
    ]
    _emit(args, record, lines)
    return EXIT_OK


def cmd_derive(args: argparse.Namespace, settings: Settings) -> int:
    kind = cast(str | None, args.kind)
    if kind is None:
        print("derive needs one of: lines, mub-gram, hadamards", file=sys.stderr)
        return EXIT_USAGE
    g = load_lssd(cast(str, args.graph))
    if kind == "hadamards":
        result = hadamards_from_lssd(g)
        out_dir = Path(cast(str, args.out))
        out_dir.mkdir(parents=True, exist_ok=True)
        for i, h in enumerate(result.matrices, start=2):
            save_hadamard(h, out_dir / f"H1_{i}.txt")
        _emit(
            args,
            {"order": result.order, "count": len(result)},
            [f"{len(result)} unbiased Hadamard matrices of order {result.order} written to {out_dir}"],
        )
        return EXIT_OK
    if kind == "lines":
        t = cast(int, args.t)
        gram, coeffs = equiangular_gram(g, t)
        record = {
            "lines": gram.dim,
            "dimension": gram.claimed_rank,
            "cosine": str(coeffs.c),
            "alpha": str(coeffs.alpha),
            "beta": str(coeffs.beta),
            "gamma": str(coeffs.gamma),
        }
        lines = [f"{gram.dim} equiangular lines in dimension {gram.claimed_rank}, |cos| = {coeffs.c}"]
    else:
        mg = mub_gram(g)
        gram = mg.gram
        record = {"beta1": str(mg.beta1), "beta2": str(mg.beta2), "is_mub": mg.is_mub}
        lines = [
            f"{g.w} bases in dimension {mg.v}: beta1 = {mg.beta1}, beta2 = {mg.beta2}",
            f"  mutually unbiased: {'yes' if mg.is_mub else 'no'}",
        ]
    out = cast(str | None, args.out)
    if out is not None:
        save_gram(gram, out)
    elif not cast(bool, args.json):
        log.debug("Gram document:\n%s", dumps_gram(gram))
    _emit(args, record, lines)
    return EXIT_OK


COMMANDS: dict[str, Handler] = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "verify-oa": cmd_verify_oa,
    "screen": cmd_screen,
    "bounds": cmd_bounds,
    "derive": cmd_derive,
}


def _configure_logging(args: argparse.Namespace, settings: Settings) -> None:
    level_name = cast(str | None, args.log_level) or settings.log_level
    verbose = cast(int, args.verbose)
    if level_name is not None:
        level = logging.getLevelName(level_name.upper())
        if not isinstance(level, int):
            raise FormatError(f"unknown log level {level_name!r}", "log-level")
    else:
        level = logging.DEBUG if verbose >= 2 else logging.INFO if verbose == 1 else logging.WARNING
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE
    command = cast(str | None, args.command)
    if command is None:
        parser.print_help()
        return EXIT_USAGE
    try:
        config = cast(str | None, args.config)
        settings = load_settings(config) if config else Settings()
        _configure_logging(args, settings)
        return COMMANDS[command](args, settings)
    except FormatError as e:
        where = f" ({e.field})" if e.field else ""
        print(f"Format error{where}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LssdError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_FAIL
