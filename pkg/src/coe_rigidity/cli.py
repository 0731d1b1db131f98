"""Command-line entry point.

Usage:
    coe-rigidity coboundary [--config PATH|NAME] [--level L] [--window W]
    coe-rigidity skew-demo [--preset default|abelian|sixfold] [--config PATH|NAME] [--level L] [--window W]
    coe-rigidity rigidity [--config PATH|NAME]
    coe-rigidity bilipschitz [--config PATH|NAME] [--window W]
    coe-rigidity freeness-sweep [--config PATH|NAME] [--level L] [--window W]

Common flags: --out PATH, --format json|text, --trace-level 0-3.

Exit codes:
  0 - every requested verification passed
  1 - a verification failed or a domain error was raised
  2 - the configuration did not validate
"""

from __future__ import annotations

import argparse
import sys
import time
from collections.abc import Callable
from typing import Any

from pydantic import ValidationError

from coe_rigidity.cocycle.coboundary import CoboundaryAtLevel, coboundary_decide_chain
from coe_rigidity.cocycle.essential_values import (
    essential_values_bruteforce,
    essential_values_closed_form,
    essential_values_limit,
)
from coe_rigidity.cocycle.level_cocycle import LevelCocycle, cohomologous_verify
from coe_rigidity.config import (
    CoboundaryConfig,
    FreenessConfig,
    RunConfig,
    SamplesFile,
    SkewDemoConfig,
    WitnessFile,
    build_chain,
    load_config,
)
from coe_rigidity.errors import ChainError, CocycleError, ConfigError, GroupError, RigidityError, SkewError
from coe_rigidity.group.bilipschitz import bilipschitz_classify, transported_orientation
from coe_rigidity.group.finite_table import FiniteGroupTable
from coe_rigidity.odometer.chain import DivisibilityChain
from coe_rigidity.odometer.model import OdometerModel
from coe_rigidity.report import Report
from coe_rigidity.rigidity.extraction import rigidity_extract
from coe_rigidity.rigidity.freeness import topological_freeness_sweep
from coe_rigidity.rigidity.models import ModelKind
from coe_rigidity.skew.certificate import NonConjugacyCertificate, nonconjugacy_certificate, search_skew_conjugacy
from coe_rigidity.skew.orbit_cocycle import verify_coe
from coe_rigidity.skew.system import SkewSystem, transitive_and_free_check
from coe_rigidity.trace import TraceLog

DOMAIN_ERRORS = (GroupError, ChainError, CocycleError, SkewError, RigidityError)

Outcome = tuple[dict[str, Any], bool, list[str]]


def cmd_coboundary(cfg: CoboundaryConfig, run: RunConfig, trace: TraceLog) -> Outcome:
    chain = build_chain(cfg.chain)
    c = cfg.cocycle.build(chain)
    verdict = coboundary_decide_chain(c, chain)
    payload: dict[str, Any] = {"chain": chain.to_json(), "cocycle": c.to_json(), "verdict": verdict.to_json()}
    passed = True

    if isinstance(verdict, CoboundaryAtLevel):
        model = OdometerModel(chain, verdict.level)
        trivial = LevelCocycle.constant(c.target, chain, c.level, c.target.identity)
        window = run.window if run.window is not None else model.modulus
        verified = cohomologous_verify(c, trivial, verdict.transfer, model, window)
        payload["transfer_verified"] = verified
        passed = verified
        if verified:
            trace.ok("transfer", f"level={verdict.level}")
        else:
            trace.fail("transfer", f"level={verdict.level}")
        summary = [f"coboundary at level {verdict.level} (transfer verified: {verified})"]
    else:
        trace.ok("obstruction", f"sum={verdict.sum_value}")
        summary = [f"never a coboundary: sum {verdict.sum_value}, blocking primes {list(verdict.blocking_primes)}"]

    levels = [run.level] if run.level is not None else (cfg.levels or [c.level])
    essential = []
    for k in levels:
        closed = essential_values_closed_form(c, chain, k)
        brute = essential_values_bruteforce(c, OdometerModel(chain, k), k)
        agree = closed == brute
        passed = passed and agree
        essential.append({"level": k, "values": sorted(closed.values), "bruteforce_agrees": agree})
        summary.append(f"E at level {k}: {sorted(closed.values)} (brute force agrees: {agree})")
    limit = essential_values_limit(c, chain)
    payload["essential_values"] = essential
    payload["essential_values_limit"] = limit.to_json()
    summary.append(f"E(c) = {sorted(limit.values)}")
    trace.ok("essential_values", f"levels={levels}")
    return payload, passed, summary


def _certify(
    group: FiniteGroupTable,
    c: LevelCocycle,
    c_prime: LevelCocycle,
    chain: DivisibilityChain,
    trace: TraceLog,
) -> Any:
    if c_prime.is_trivial:
        return nonconjugacy_certificate(group, c, chain, trace)
    if c.is_trivial:
        return nonconjugacy_certificate(group, c_prime, chain, trace)
    raise ConfigError("a non-conjugacy certificate needs one of the two cocycles to be trivial")


def cmd_skew_demo(cfg: SkewDemoConfig, run: RunConfig, trace: TraceLog) -> Outcome:
    chain = build_chain(cfg.chain)
    base = cfg.base(run.level)
    c, c_prime = cfg.cocycles()
    group = c.target
    sys_c = SkewSystem(base, group, c)
    sys_prime = SkewSystem(base, group, c_prime)

    transitive, free = transitive_and_free_check(sys_c)
    transitive_prime, free_prime = transitive_and_free_check(sys_prime)
    if transitive and free and transitive_prime and free_prime:
        trace.ok("transitive_free")
    else:
        trace.fail("transitive_free", f"transitive={transitive}/{transitive_prime} free={free}/{free_prime}")
    window = run.window if run.window is not None else cfg.window
    coe = verify_coe(sys_c, sys_prime, window=window, trace=trace)

    cert = _certify(group, c, c_prime, chain, trace)
    certified = isinstance(cert, NonConjugacyCertificate) and cert.verify()
    payload: dict[str, Any] = {
        "system": sys_c.to_json(),
        "system_prime": sys_prime.to_json(),
        "points": sys_c.point_count,
        "transitive": [transitive, transitive_prime],
        "free": [free, free_prime],
        "coe": coe,
        "certificate": cert.to_json(),
    }
    summary = [
        f"{sys_c.point_count} points over {base}",
        f"transitive: {transitive}/{transitive_prime}  free: {free}/{free_prime}  coe: {coe}",
        f"non-conjugacy certificate: {'issued' if certified else 'refused'}",
    ]
    passed = transitive and free and transitive_prime and free_prime and coe and certified

    if cfg.search_level is not None:
        small = cfg.base(cfg.search_level)
        found = search_skew_conjugacy(SkewSystem(small, group, c), SkewSystem(small, group, c_prime), small.modulus)
        payload["conjugacy_search"] = {"level": cfg.search_level, "found": found.to_json() if found else None}
        summary.append(f"exhaustive conjugacy search at n_L={small.modulus}: {'found' if found else 'none'}")
        passed = passed and (found is None or not certified)
    return payload, passed, summary


def cmd_rigidity(cfg: WitnessFile, run: RunConfig, trace: TraceLog) -> Outcome:
    witness, model, model_prime, split = cfg.build()
    result = rigidity_extract(witness, model, model_prime, config=split, trace=trace)
    payload = {"model": model.to_json(), "model_prime": model_prime.to_json(), "result": result.to_json()}
    plus, minus = result.partition_sizes
    summary = [
        f"{model} -> {model_prime}",
        f"|X+| = {plus}, |X-| = {minus}, defect values {list(result.defect_values)}",
        f"automorphism phi_{result.k}, reflection index {result.reflection_index}",
        f"conjugacy verified: {result.verified}",
    ]
    return payload, result.verified, summary


def cmd_bilipschitz(cfg: SamplesFile, run: RunConfig, trace: TraceLog) -> Outcome:
    if run.window is not None and cfg.map is not None:
        cfg = cfg.model_copy(update={"window": run.window})
    samples, config = cfg.build()
    report = bilipschitz_classify(samples, config)
    transported = transported_orientation(samples)
    trace.ok("classify", f"sign={report.sign}")
    payload = {"classification": report.to_json(), "transported": transported.to_json(), "samples": len(samples)}
    sign = "+" if report.sign > 0 else "-"
    summary = [
        f"f(x) = {sign}x + {report.constant} + r(x), |r| <= {report.defect_bound} on |x| <= {report.window}",
        f"transported orientation on translations: {'+' if transported.sign > 0 else '-'}",
    ]
    return payload, True, summary


def cmd_freeness_sweep(cfg: FreenessConfig, run: RunConfig, trace: TraceLog) -> Outcome:
    model = cfg.model.build()
    if run.level is not None:
        model = cfg.model.model_copy(update={"level": run.level}).build()
    window = run.window if run.window is not None else cfg.window
    report = topological_freeness_sweep(model, window)
    classified = all(s.is_trivial or s.reflection is not None for s in report.stabilizers)
    small_fixed = all(n <= 2 for n in report.fixed_counts.values())
    passed = classified and small_fixed and (report.is_free or model.kind is ModelKind.CASE_I)
    if passed:
        trace.ok("stabilizers", f"kernel={report.kernel_period}")
    else:
        trace.fail("stabilizers", f"kernel={report.kernel_period}")
    summary = [
        f"{model}: kernel period {report.kernel_period}, free modulo kernel: {report.is_free}",
        f"fixed sets: {({i: list(xs) for i, xs in report.fixed_sets.items()})}",
    ]
    return report.to_json(), passed, summary


COMMANDS: dict[str, Callable[[Any, RunConfig, TraceLog], Outcome]] = {
    "coboundary": cmd_coboundary,
    "skew-demo": cmd_skew_demo,
    "rigidity": cmd_rigidity,
    "bilipschitz": cmd_bilipschitz,
    "freeness-sweep": cmd_freeness_sweep,
}


def run_command(run: RunConfig) -> Report:
    """Validate the input for ``run`` and execute it; domain errors become a failed report."""
    trace = TraceLog(subject=run.command)
    cfg = load_config(run)
    start = time.perf_counter()
    try:
        payload, passed, summary = COMMANDS[run.command](cfg, run, trace)
    except DOMAIN_ERRORS as exc:
        trace.fail("error", type(exc).__name__)
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        passed, summary = False, [f"{type(exc).__name__}: {exc}"]
    report = Report(command=run.command, payload=payload, passed=passed, summary=summary)
    report.elapsed_seconds = time.perf_counter() - start
    report.payload["trace"] = [{"stage": e.stage, "passed": e.passed, "detail": e.detail} for e in trace.entries]
    if run.trace_level > 0:
        print(trace.format_line(run.trace_level), file=sys.stderr)
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coe-rigidity",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=None, help="Input JSON path or bundled fixture name")
        p.add_argument("--out", default=None, help="Write the JSON report to this path")
        p.add_argument("--level", type=int, default=None, help="Model or essential-value level override")
        p.add_argument("--window", type=int, default=None, help="Verification window override")
        p.add_argument("--format", choices=["json", "text"], default="text", help="Standard output format")
        p.add_argument("--trace-level", type=int, default=0, choices=[0, 1, 2, 3], help="Trace verbosity on stderr")
        if name == "skew-demo":
            p.add_argument("--preset", default=None, help="Named demo configuration")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        run = RunConfig(
            command=args.command,
            config=args.config,
            out=args.out,
            level=args.level,
            window=args.window,
            format=args.format,
            trace_level=args.trace_level,
            preset=getattr(args, "preset", None),
        )
        report = run_command(run)
    except ConfigError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"ERROR: {exc}", file=sys.stderr)
        return 2

    if run.out is not None:
        report.write(run.out)
    sys.stdout.write(report.dumps() if run.format == "json" else report.format_text())
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
