import argparse
import asyncio
import csv
import logging
import sys
from typing import List, Optional, Sequence

from pydantic import BaseModel
from dotenv import load_dotenv

from agents.orchestrator import AnalysisOrchestrator
from models.errors import PBFError
from models.schemas import (
    AnalysisReport, CoefficientValue, KernelResult, KernelVerdict, SolveResult, SuiteReport, WitnessCheck
)
from utils.settings import Settings

load_dotenv()
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pbf",
        description="Exact Fourier analysis and width-based hypercontractivity for pseudo-Boolean functions",
    )
    parser.add_argument("--dense-cap", type=int, default=None, help="max n for exact dense tables")
    parser.add_argument("--log-level", default=None, help="logging level (default from PBF_LOG_LEVEL)")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="degree, width, moments, norms and bound checks")
    analyze.add_argument("file")
    analyze.add_argument("--moments", type=_int_list, default=None, help="even moment orders r, e.g. 1,2,3")
    analyze.add_argument("--norms", type=_float_list, default=None, help="p-norms, e.g. 2,3,4")
    analyze.add_argument("--json", action="store_true")

    bound = commands.add_parser("bound", help="hypercontractive coefficients")
    which = bound.add_mutually_exclusive_group(required=True)
    which.add_argument("--classical", nargs=3, type=float, metavar=("Q", "P", "D"))
    which.add_argument("--width42", nargs=2, type=int, metavar=("RHO", "M"))
    which.add_argument("--prior42", nargs=1, type=int, metavar="RHO", help="older 2 rho^2 coefficient")
    which.add_argument("--width2r", nargs=2, type=int, metavar=("R", "RHO"))
    which.add_argument("--qp", nargs=3, type=float, metavar=("Q", "P", "RHO"))
    bound.add_argument("--refined", action="store_true", help="Bell-number constant for --width2r")
    bound.add_argument("--json", action="store_true")

    verify = commands.add_parser("verify", help="seeded randomized verification suites")
    verify.add_argument("suite", choices=["theorem1", "theorem2", "corollary", "maxlin"])
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--nmax", type=int, default=10)
    verify.add_argument("--mmax", type=int, default=32)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--r", type=int, default=None)
    verify.add_argument("--q", type=float, default=None)
    verify.add_argument("--p", type=float, default=None)
    verify.add_argument("--json", action="store_true")

    maxlin = commands.add_parser("maxlin", help="MaxLin above-average instances")
    maxlin.add_argument("action", choices=["kernel", "solve", "check"])
    maxlin.add_argument("file")
    maxlin.add_argument("--out", default=None, help="kernel: write the kernel system as .mla")
    maxlin.add_argument("--json", action="store_true")

    examples = commands.add_parser("examples", help="write an extremal function family")
    examples.add_argument("family", choices=["affine", "full", "linear"])
    examples.add_argument("--n", type=int, required=True)
    examples.add_argument("--out", default=None)

    scan = commands.add_parser("scan", help="CSV rows of ||f||_2r / ||f||_2 against sqrt(r rho)")
    scan.add_argument("--family", choices=["affine", "full", "linear", "constant"], required=True)
    scan.add_argument("--nmax", type=int, required=True)
    scan.add_argument("--rmax", type=int, required=True)

    return parser


def _settings_from(args: argparse.Namespace) -> Settings:
    overrides = {}
    if args.dense_cap is not None:
        overrides["dense_cap"] = args.dense_cap
    if args.log_level is not None:
        overrides["log_level"] = args.log_level.upper()
    return Settings(**overrides)


def _emit(model: BaseModel, as_json: bool, lines: List[str]) -> None:
    if as_json:
        print(model.json(indent=2))
    else:
        print("\n".join(lines))


def _analysis_lines(report: AnalysisReport) -> List[str]:
    lines = [
        f"n              {report.n}",
        f"m              {report.m}",
        f"degree         {report.degree}",
        f"width          {report.width}",
        f"per_variable   {' '.join(str(v) for v in report.per_variable)}",
        f"E[f^2]         {report.second_moment}",
    ]
    lines += [f"{'E[f^' + str(2 * mv.r) + ']':<15}{mv.value}" for mv in report.moments]
    lines += [f"{'||f||_' + repr(nv.p):<15}{nv.value!r}" for nv in report.norms]
    for b in report.bounds:
        status = "holds" if b.holds else "VIOLATED"
        tight = ", tight" if b.tight else ""
        params = " ".join(f"{k}={v!r}" for k, v in b.parameters.items())
        lines.append(f"[{b.name.value}] lhs {b.lhs} <= rhs {b.rhs}: {status}{tight} ({params})")
    return lines


def _coefficient_lines(value: CoefficientValue) -> List[str]:
    lines = [f"{value.name.value}"]
    if value.r is not None:
        lines.append(f"r           {value.r}")
    if value.exact is not None:
        lines.append(f"exact power {value.exact}")
    lines.append(f"coefficient {value.value!r}")
    return lines


def _suite_lines(report: SuiteReport) -> List[str]:
    lines = [
        f"suite       {report.suite}",
        f"seed        {report.seed}",
        f"trials      {report.trials}",
        f"violations  {report.violations}",
        f"errors      {report.errors}",
    ]
    lines += [f"{key:<11} {value}" for key, value in sorted(report.counts.items())]
    lines += [f"  {failure}" for failure in report.failures]
    return lines


def _kernel_lines(result: KernelResult) -> List[str]:
    lines = [
        f"verdict     {result.verdict.value}",
        f"m           {result.m}",
        f"width       {result.width}",
        f"sum c^2     {result.sum_squares}",
        f"threshold   {result.threshold!r}",
        f"m-bound     16k^2(2rho+1) = {result.m_bound}",
        f"k'          {result.k_prime}",
    ]
    if result.width_exponent is not None:
        lines.append(f"alpha       {result.width_exponent!r} (rho = m^alpha)")
    if result.verdict == KernelVerdict.YES_BY_BOUND:
        lines.append(f"kernel      {result.kernel.m} unit-weight equations on {result.kernel.n} variables, b = +1")
    return lines


def _solve_lines(result: SolveResult) -> List[str]:
    return [
        f"max weight  {result.max_weight} of {result.total_weight}",
        f"max Q       {result.max_q}",
        f"witness     {' '.join(str(x) for x in result.witness)}",
    ]


def _witness_lines(check: WitnessCheck) -> List[str]:
    return [
        f"max Q       {check.max_q}",
        f"threshold   {check.threshold!r}",
        f"holds       {check.holds}",
    ]


async def _dispatch(args: argparse.Namespace, orchestrator: AnalysisOrchestrator) -> int:
    if args.command == "analyze":
        report = await orchestrator.analyze_file(args.file, args.moments, args.norms)
        _emit(report, args.json, _analysis_lines(report))
        return EXIT_OK if all(b.holds for b in report.bounds) else EXIT_VIOLATION

    if args.command == "bound":
        if args.classical:
            value = orchestrator.coefficient("classical", args.classical)
        elif args.width42:
            value = orchestrator.coefficient("width42", args.width42)
        elif args.prior42:
            value = orchestrator.coefficient("prior42", args.prior42)
        elif args.width2r:
            value = orchestrator.coefficient("width2r", args.width2r, refined=args.refined)
        else:
            value = orchestrator.coefficient("qp", args.qp)
        _emit(value, args.json, _coefficient_lines(value))
        return EXIT_OK

    if args.command == "verify":
        seed = args.seed if args.seed is not None else orchestrator.settings.seed
        report = await orchestrator.verify(args.suite, args.trials, args.nmax, args.mmax, seed,
                                           r=args.r, q=args.q, p=args.p)
        _emit(report, args.json, _suite_lines(report))
        return EXIT_OK if report.passed else EXIT_VIOLATION

    if args.command == "maxlin":
        result = await orchestrator.maxlin(args.action, args.file, args.out)
        if isinstance(result, KernelResult):
            _emit(result, args.json, _kernel_lines(result))
        elif isinstance(result, SolveResult):
            _emit(result, args.json, _solve_lines(result))
        else:
            _emit(result, args.json, _witness_lines(result))
            return EXIT_OK if result.holds else EXIT_VIOLATION
        return EXIT_OK

    if args.command == "examples":
        text = await orchestrator.example(args.family, args.n, args.out)
        if not args.out:
            sys.stdout.write(text)
        return EXIT_OK

    if args.command == "scan":
        rows = orchestrator.scan(args.family, args.nmax, args.rmax)
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["family", "n", "r", "rho", "ratio", "reference", "implied_c"])
        for row in rows:
            writer.writerow([row.family, row.n, row.r, row.rho, repr(row.ratio), repr(row.reference), repr(row.implied_c)])
        return EXIT_OK

    raise PBFError(f"unknown command {args.command!r}")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    try:
        settings = _settings_from(args)
        logging.basicConfig(
            level=settings.log_level,
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )
        return asyncio.run(_dispatch(args, AnalysisOrchestrator(settings)))
    except (PBFError, ValueError, FileNotFoundError) as e:
        logger.error(f"💥 {type(e).__name__}: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(run())
