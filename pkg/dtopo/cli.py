"""
Command-line front-end.

Each command is a handler taking the parsed arguments and the run
configuration and returning an exit code: 0 when the check passes, 1 for a
semantic negative (violations, false verdicts, no cover), 2 for usage,
parse and domain errors. Reports go to stdout, logs to stderr.
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import ValidationError

from dtopo.core.builders import build_named, list_named
from dtopo.core.complex import is_loop_free, product
from dtopo.core.components import pair_components, to_dot
from dtopo.core.homotopy import ALPHAS, HomotopyAnalyzer, InessentialCertificate, Verdict, check_witness
from dtopo.core.maps import check_psp
from dtopo.core.paths import class_table, classes
from dtopo.core.serialization import (
    dumps_complex,
    load_certificate,
    load_map,
    load_witness,
    resolve_complex,
    save_certificate,
    save_complex,
)
from dtopo.core.tc import directed_tc
from dtopo.errors import BudgetExceeded, CertificateError, ComplexError, CoverError, DtopoError, ParameterError
from dtopo.logging_config import get_logger, setup_logging
from dtopo.models import ClassReport, RunConfig, VerdictReport
from dtopo.reports import class_report, pair_classes, render
from dtopo.settings import settings

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def _emit(text: str) -> None:
    print(text.rstrip("\n"))


def _verdict_exit(verdict: Verdict) -> int:
    return EXIT_OK if verdict is Verdict.TRUE else EXIT_NEGATIVE


def _analyzer(config: RunConfig) -> HomotopyAnalyzer:
    return HomotopyAnalyzer(depth=config.depth, budget=config.budget)


def cmd_validate(args: argparse.Namespace, config: RunConfig) -> int:
    """
    Validate a complex file.

    Returns:
        0 when valid, 1 when violations were found
    """
    X = resolve_complex(args.complex)
    report = X.validation
    _emit(render(report, config.output_format))
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_gen(args: argparse.Namespace, config: RunConfig) -> int:
    """Write a named complex, or list the builders when no name is given."""
    if not args.name:
        for name, params in list_named():
            _emit(f"{name} {params}".rstrip())
        return EXIT_OK
    X = build_named(args.name, *args.params)
    if args.out:
        path = save_complex(X, args.out)
        _emit(f"wrote {path} ({len(X)} cells)")
    else:
        _emit(dumps_complex(X))
    return EXIT_OK


def cmd_pi0(args: argparse.Namespace, config: RunConfig) -> int:
    """
    Report dihomotopy classes for one pair or for every reachable pair.

    Raises:
        ParameterError: If neither --all-pairs nor both --from and --to are given
        ComplexError: If a named vertex does not exist
    """
    X = resolve_complex(args.complex)
    X.require_valid()
    if args.all_pairs:
        report = class_report(class_table(X, config.max_len, config.workers))
    else:
        if args.src is None or args.tgt is None:
            raise ParameterError("pi0 needs --from and --to, or --all-pairs")
        for v in (args.src, args.tgt):
            if v not in X.vertices:
                raise ComplexError(f"{v!r} is not a vertex of {X.name!r}")
        found = classes(X, args.src, args.tgt, config.max_len)
        exhaustive = is_loop_free(X) and (config.max_len is None or config.max_len >= len(X.vertices) - 1)
        report = ClassReport(
            complex=X.name,
            mode="exhaustive" if exhaustive else "bounded",
            max_len=None if exhaustive else config.max_len,
            lower_bound=not exhaustive,
            pairs=[pair_classes(args.src, args.tgt, found)],
        )
    _emit(render(report, config.output_format))
    return EXIT_OK


def _write_certificates(certificate, directory: Optional[str]) -> List[str]:
    if certificate is None or not directory:
        return []
    return [str(p) for p in save_certificate(certificate, directory)]


def cmd_analyze(args: argparse.Namespace, config: RunConfig) -> int:
    """
    Run one of the map checks and report its verdict.

    Returns:
        0 for a proved property, 1 for false, not-found or inconclusive verdicts
    """
    check = args.check
    if check == "psp":
        X, Y = resolve_complex(args.source), resolve_complex(args.target)
        result = check_psp(load_map(args.map, X, Y))
        detail = "" if result else f"classes of {result.failing_pair} are not preserved"
        if result.relative_to_bound:
            detail = f"{detail}; relative to max_len" if detail else "relative to max_len"
        report = VerdictReport(check="psp", verdict="true" if result else "false", detail=detail)
        _emit(render(report, config.output_format))
        return EXIT_OK if result else EXIT_NEGATIVE

    if check == "witness":
        X, Y = resolve_complex(args.source), resolve_complex(args.target)
        start, end = load_map(args.start, X, Y), load_map(args.end, X, Y)
        natural = check_witness(load_witness(args.witness, start, end))
        report = VerdictReport(check="witness", verdict="true" if natural else "false",
                               detail="" if natural else "naturality fails")
        _emit(render(report, config.output_format))
        return EXIT_OK if natural else EXIT_NEGATIVE

    if check == "certificate":
        X = resolve_complex(args.source)
        Y = resolve_complex(args.target) if args.target else None
        certificate = load_certificate(args.directory, X, Y)
        try:
            _analyzer(config).validate_certificate(certificate)
        except CertificateError as e:
            _emit(render(VerdictReport(check="certificate", verdict="false", detail=str(e)),
                         config.output_format))
            return EXIT_NEGATIVE
        _emit(render(VerdictReport(check="certificate", verdict="true"), config.output_format))
        return EXIT_OK

    analyzer = _analyzer(config)
    alpha = config.alpha
    if check == "inessential":
        X = resolve_complex(args.complex)
        result = analyzer.check_inessential(load_map(args.map, X, X), alpha)
    elif check == "rather":
        X = resolve_complex(args.complex)
        pool = [load_map(p, X, X) for p in args.pool] if args.pool else None
        result = analyzer.check_rather_inessential(load_map(args.map, X, X), alpha, pool)
    else:
        X, Y = resolve_complex(args.source), resolve_complex(args.target)
        if args.map:
            result = analyzer.check_dhe(load_map(args.map, X, Y), alpha)
        else:
            result = analyzer.dhe_equivalent(X, Y, alpha)
    written = _write_certificates(result.certificate, args.certificates)
    _emit(render(result.to_report(written), config.output_format))
    return _verdict_exit(result.verdict)


def cmd_components(args: argparse.Namespace, config: RunConfig) -> int:
    """
    Report the pair component category, merging along certified endomaps.

    Raises:
        CertificateError: If a merge directory does not hold an inessentiality certificate
    """
    X = resolve_complex(args.complex)
    X.require_valid()
    merges = []
    for directory in args.merge or []:
        certificate = load_certificate(directory, X)
        if not isinstance(certificate, InessentialCertificate):
            raise CertificateError(f"{directory} does not hold an inessentiality certificate")
        merges.append(certificate)
    category = pair_components(X, merges, analyzer=_analyzer(config))
    if config.dot:
        path = Path(config.dot)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(to_dot(category), encoding="utf-8")
        logger.info(f"Wrote DOT graph to {path}")
    _emit(render(category.to_report(), config.output_format))
    return EXIT_OK


def cmd_dtc(args: argparse.Namespace, config: RunConfig) -> int:
    """
    Compute directed_tc and its witness cover.

    Returns:
        0 with a cover, 1 when no cover exists within --max-k or the budget ran out
    """
    X = resolve_complex(args.complex)
    X.require_valid()
    try:
        cover = directed_tc(X, config.max_k, budget=config.budget)
    except CoverError as e:
        _emit(f"dtc>{e.max_k}")
        return EXIT_NEGATIVE
    except BudgetExceeded as e:
        _emit(f"dtc: inconclusive (budget exhausted after {e.explored} nodes)")
        return EXIT_NEGATIVE
    report = cover.to_report()
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info(f"Wrote cover to {path}")
    _emit(render(report, config.output_format))
    return EXIT_OK


def cmd_product(args: argparse.Namespace, config: RunConfig) -> int:
    """Write the product of two complexes."""
    X, Y = resolve_complex(args.first), resolve_complex(args.second)
    P = product(X, Y, name=args.name)
    if args.out:
        path = save_complex(P, args.out)
        _emit(f"wrote {path} ({len(P)} cells)")
    else:
        _emit(dumps_complex(P))
    return EXIT_OK


HANDLERS: Dict[str, Callable[[argparse.Namespace, RunConfig], int]] = {
    "validate": cmd_validate,
    "gen": cmd_gen,
    "pi0": cmd_pi0,
    "analyze": cmd_analyze,
    "components": cmd_components,
    "dtc": cmd_dtc,
    "product": cmd_product,
}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-len", type=int, default=None, help="path length bound (needed for loops)")
    common.add_argument("--depth", type=int, default=None, help="zig-zag depth bound")
    common.add_argument("--budget", type=int, default=None, help="search node budget")
    common.add_argument("--max-k", type=int, default=None, help="patch bound for dtc")
    common.add_argument("--alpha", choices=ALPHAS, default="0", help="homotopy flavour")
    common.add_argument("--format", dest="output_format", choices=("text", "structured"), default="text")
    common.add_argument("--workers", type=int, default=None, help="worker threads")
    common.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    return common


def _parse_args(argv: Optional[Sequence[str]]) -> argparse.Namespace:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="dtopo", description="Directed topology on finite pre-cubical sets.")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("validate", parents=[common], help="check the pre-cubical relations")
    p.add_argument("complex", help="complex file or builder spec such as boundary-cube:2")

    p = commands.add_parser("gen", parents=[common], help="write a named complex")
    p.add_argument("name", nargs="?", help="builder name; lists builders when omitted")
    p.add_argument("params", nargs="*", help="builder parameters")
    p.add_argument("--out", help="output path (stdout when omitted)")

    p = commands.add_parser("pi0", parents=[common], help="dihomotopy classes of vertex pairs")
    p.add_argument("complex")
    p.add_argument("--from", dest="src")
    p.add_argument("--to", dest="tgt")
    p.add_argument("--all-pairs", action="store_true")

    p = commands.add_parser("analyze", help="map checks")
    checks = p.add_subparsers(dest="check", required=True)
    q = checks.add_parser("psp", parents=[common])
    q.add_argument("source")
    q.add_argument("target")
    q.add_argument("map")
    q = checks.add_parser("witness", parents=[common])
    q.add_argument("source")
    q.add_argument("target")
    q.add_argument("start", help="map file the witness starts at")
    q.add_argument("end", help="map file the witness ends at")
    q.add_argument("witness")
    q = checks.add_parser("certificate", parents=[common])
    q.add_argument("directory")
    q.add_argument("source")
    q.add_argument("target", nargs="?")
    for name in ("inessential", "rather"):
        q = checks.add_parser(name, parents=[common])
        q.add_argument("complex")
        q.add_argument("map")
        q.add_argument("--certificates", help="directory for certificate files")
        if name == "rather":
            q.add_argument("--pool", nargs="+", help="candidate helper map files")
    q = checks.add_parser("dhe", parents=[common])
    q.add_argument("source")
    q.add_argument("target")
    q.add_argument("--map", help="map file; every admissible map is tried when omitted")
    q.add_argument("--certificates", help="directory for certificate files")

    p = commands.add_parser("components", parents=[common], help="pair component category")
    p.add_argument("complex")
    p.add_argument("--dot", help="write the category as a DOT graph")
    p.add_argument("--merge", nargs="+", help="inessentiality certificate directories to merge along")

    p = commands.add_parser("dtc", parents=[common], help="directed topological complexity")
    p.add_argument("complex")
    p.add_argument("--out", help="write the witness cover as JSON")

    p = commands.add_parser("product", parents=[common], help="product of two complexes")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--name")
    p.add_argument("--out")

    return parser.parse_args(argv)


def _run_config(args: argparse.Namespace) -> RunConfig:
    inputs = [
        getattr(args, key) for key in ("complex", "source", "target", "first", "second", "map", "directory")
        if getattr(args, key, None)
    ]
    return RunConfig(
        command=args.command if args.command != "analyze" else f"analyze {args.check}",
        inputs=inputs,
        max_len=args.max_len,
        depth=args.depth if args.depth is not None else settings.DEFAULT_DEPTH,
        budget=args.budget if args.budget is not None else settings.DEFAULT_BUDGET,
        max_k=args.max_k if args.max_k is not None else settings.DEFAULT_MAX_K,
        alpha=args.alpha,
        output_format=args.output_format,
        dot=getattr(args, "dot", None),
        workers=args.workers if args.workers is not None else settings.WORKERS,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name; sys.argv when omitted

    Returns:
        Exit code
    """
    try:
        args = _parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR
    setup_logging(args.log_level)

    try:
        config = _run_config(args)
    except ValidationError as e:
        logger.error(f"Invalid options: {e}")
        print(f"error: invalid options: {e.errors()[0]['loc'][0]}: {e.errors()[0]['msg']}", file=sys.stderr)
        return EXIT_ERROR

    previous = (settings.DEFAULT_MAX_LEN, settings.WORKERS)
    if config.max_len is not None:
        settings.DEFAULT_MAX_LEN = config.max_len
    settings.WORKERS = config.workers
    logger.info(f"Running {config.command} on {config.inputs}")
    try:
        code = HANDLERS[args.command](args, config)
        logger.info(f"{config.command} finished with exit code {code}")
        return code
    except (DtopoError, ValidationError, OSError) as e:
        logger.error(f"{config.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    finally:
        settings.DEFAULT_MAX_LEN, settings.WORKERS = previous


if __name__ == "__main__":
    sys.exit(main())
