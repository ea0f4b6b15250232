"""Command-line front end.

Commands: ``box eval``, ``ns-check``, ``chsh``, ``vertex analyze``,
``vertex random``, ``vandam``, ``simulate-otp``, ``ic``, ``version``.

Exit codes: 0 success, 2 parse/spec error, 3 domain or resource error,
4 analysis-negative verdict (signaling box, rejected vertex).

All machine output is deterministic: rationals appear as "num/den"
strings, JSON is dumped with sorted keys, and equal configurations
(including the seed, which falls back to the OTPLAB_SEED environment
variable) produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .analysis import (
    CANONICAL_CHSH_VARIANT,
    CHSH_VARIANTS,
    NsReport,
    chsh_family,
    chsh_value,
    full_output_vertex_structure,
    local_2222,
    ns_check,
    otp_model_from_vertex,
)
from .boxes import (
    CorrelationTable,
    KeyDist,
    OtpBoxSpec,
    Scenario,
    anti_pr_box,
    evaluate_notp,
    evaluate_otp,
    isotropic,
    noisy_ontic_box,
    pr_box,
)
from .errors import (
    ConstructionError,
    DomainError,
    OtpLabError,
    PreconditionError,
    ProtocolError,
    ResourceLimitError,
    VertexRejection,
)
from .infotheory import ic_threshold_notp, rac_run_noisy_ontic, rac_run_notp
from .protocols import (
    DistributedFunction,
    format_bits,
    parse_bits,
    simulate_otp_via_pr,
    vandam_exhaustive,
    vandam_run,
)
from .serialize import (
    dumps_canonical,
    format_rational,
    load_spec,
    load_table,
    parse_rational,
    spec_to_dict,
    table_to_dict,
    transcript_events,
)

EXIT_OK = 0
EXIT_SPEC_ERROR = 2
EXIT_DOMAIN_ERROR = 3
EXIT_NEGATIVE_VERDICT = 4

SEED_ENV_VAR = "OTPLAB_SEED"


class UsageError(OtpLabError):
    """Invalid command configuration (maps to exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    """Normalized invocation: one value object per CLI run.

    Identical configs (same seed included) must produce byte-identical
    machine reports; nothing time- or path-dependent may enter a report.
    """

    command: str
    fmt: str = "pretty"
    output: str | None = None
    seed: int | None = None
    preset: str | None = None
    spec_path: str | None = None
    table_path: str | None = None
    variant: str = CANONICAL_CHSH_VARIANT
    m: int | None = None
    n: int | None = None
    fn: str | None = None
    fn_file: str | None = None
    x: str | None = None
    y: str | None = None
    exhaustive: bool = False
    transcript: str | None = None
    trials: int = 0
    family: str | None = None
    grid: tuple[Fraction, Fraction, int] | None = None


def _require_seed(config: RunConfig) -> int:
    if config.seed is None:
        raise UsageError(
            "this command samples randomness: pass --seed or set OTPLAB_SEED"
        )
    if not 0 <= config.seed < (1 << 64):
        raise DomainError(f"seed {config.seed} is not a 64-bit unsigned integer")
    return config.seed


def _fraction_str(value: Fraction) -> str:
    return format_rational(value)


def _approx(value: Fraction) -> str:
    return f"{_fraction_str(value)} (~{float(value):.6g})"


# ---------------------------------------------------------------------------
# input resolution


def preset_table(name: str) -> CorrelationTable:
    if name == "pr":
        return pr_box()
    if name == "anti-pr":
        return anti_pr_box()
    if name.startswith("iso:"):
        return isotropic(parse_rational(name[len("iso:"):]))
    if name.startswith("noisy-ontic:"):
        return noisy_ontic_box(parse_rational(name[len("noisy-ontic:"):]))
    raise ConstructionError(
        f"unknown preset {name!r}; expected pr, anti-pr, iso:q, or noisy-ontic:mu"
    )


def preset_otp_spec(name: str) -> OtpBoxSpec:
    """Single-key models behind the presets that have one."""
    if name == "pr":
        return OtpBoxSpec.from_functions(
            2, 2, lambda x: 0, lambda x, y: x * y, KeyDist.uniform()
        )
    if name == "anti-pr":
        return OtpBoxSpec.from_functions(
            2, 2, lambda x: 0, lambda x, y: (x * y) ^ 1, KeyDist.uniform()
        )
    raise ConstructionError(
        f"preset {name!r} has no single-key box model; use pr or anti-pr"
    )


def resolve_table(config: RunConfig) -> tuple[CorrelationTable, dict]:
    """Load the table a command operates on, plus a content-based source tag."""
    if config.preset:
        return preset_table(config.preset), {"kind": "preset", "preset": config.preset}
    if config.spec_path:
        spec = load_spec(config.spec_path)
        table = evaluate_otp(spec) if isinstance(spec, OtpBoxSpec) else evaluate_notp(spec)
        return table, {"kind": "spec", "spec": spec_to_dict(spec)}
    if config.table_path:
        return load_table(config.table_path), {"kind": "table"}
    raise UsageError("provide an input: --preset, --spec, or --table")


def ns_report_dict(report: NsReport) -> dict:
    return {
        "alice_to_bob_ns": report.alice_to_bob_ns,
        "bob_to_alice_ns": report.bob_to_alice_ns,
        "is_no_signaling": report.is_no_signaling,
        "witnesses": [
            {
                "direction": w.direction,
                "output": w.output,
                "local_input": w.local_input,
                "remote_inputs": list(w.remote_inputs),
                "marginals": [_fraction_str(v) for v in w.marginals],
            }
            for w in report.witnesses
        ],
    }


# ---------------------------------------------------------------------------
# rendering


def _write(config: RunConfig, text: str) -> None:
    if config.output:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def emit(config: RunConfig, payload: dict, pretty: str, csv_text: str | None = None) -> None:
    if config.fmt == "json":
        _write(config, dumps_canonical(payload))
    elif config.fmt == "csv":
        if csv_text is None:
            raise DomainError(
                f"{config.command} has no CSV representation; use json or pretty"
            )
        _write(config, csv_text)
    else:
        _write(config, pretty)


def pretty_table(table: CorrelationTable) -> str:
    lines = [f"P(a,b|x,y), m={table.scenario.m} Alice inputs, n={table.scenario.n} Bob inputs"]
    header = "  (x,y)   " + "".join(f"  (a,b)=({a},{b})" for a in (0, 1) for b in (0, 1))
    lines.append(header)
    for x, y in table.scenario.input_pairs():
        cells = "".join(
            f"  {_fraction_str(table.entries[x][y][a][b]):>10}"
            for a in (0, 1)
            for b in (0, 1)
        )
        lines.append(f"  ({x},{y})  {cells}")
    return "\n".join(lines) + "\n"


def pretty_ns(report: NsReport) -> str:
    lines = [
        f"no-signaling Alice->Bob: {'yes' if report.alice_to_bob_ns else 'NO'}",
        f"no-signaling Bob->Alice: {'yes' if report.bob_to_alice_ns else 'NO'}",
    ]
    for w in report.witnesses:
        v1, v2 = w.marginals
        lines.append(
            f"  witness [{w.direction}] output={w.output} local input={w.local_input}: "
            f"remote {w.remote_inputs[0]} gives {_fraction_str(v1)}"
            f" (~{float(v1):.4f}), remote {w.remote_inputs[1]} gives"
            f" {_fraction_str(v2)} (~{float(v2):.4f})"
        )
    return "\n".join(lines) + "\n"


def table_csv(table: CorrelationTable) -> str:
    lines = ["x,y,a,b,probability"]
    for x, y in table.scenario.input_pairs():
        for a in (0, 1):
            for b in (0, 1):
                lines.append(f"{x},{y},{a},{b},{_fraction_str(table.entries[x][y][a][b])}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_box_eval(config: RunConfig) -> int:
    table, source = resolve_table(config)
    report = ns_check(table)
    payload = {
        "command": "box-eval",
        "source": source,
        "table": table_to_dict(table),
        "no_signaling": ns_report_dict(report),
    }
    pretty = pretty_table(table) + pretty_ns(report)
    emit(config, payload, pretty, table_csv(table))
    return EXIT_OK


def cmd_ns_check(config: RunConfig) -> int:
    table, source = resolve_table(config)
    report = ns_check(table)
    payload = {
        "command": "ns-check",
        "source": source,
        "no_signaling": ns_report_dict(report),
    }
    csv_lines = ["direction,output,local_input,remote_input_1,remote_input_2,marginal_1,marginal_2"]
    for w in report.witnesses:
        csv_lines.append(
            f"{w.direction},{w.output},{w.local_input},{w.remote_inputs[0]},"
            f"{w.remote_inputs[1]},{_fraction_str(w.marginals[0])},{_fraction_str(w.marginals[1])}"
        )
    emit(config, payload, pretty_ns(report), "\n".join(csv_lines) + "\n")
    return EXIT_OK if report.is_no_signaling else EXIT_NEGATIVE_VERDICT


def cmd_chsh(config: RunConfig) -> int:
    table, source = resolve_table(config)
    family = chsh_family(table)
    ns = ns_check(table).is_no_signaling
    is_local = None
    max_chsh = max(abs(v) for v in family.values())
    if ns:
        verdict = local_2222(table)
        is_local = verdict.is_local
    payload = {
        "command": "chsh",
        "source": source,
        "variant": config.variant,
        "value": _fraction_str(family[config.variant]),
        "family": {name: _fraction_str(value) for name, value in family.items()},
        "max_abs": _fraction_str(max_chsh),
        "no_signaling": ns,
        "is_local": is_local,
    }
    lines = [f"CHSH {config.variant}: {_approx(family[config.variant])}"]
    for name in CHSH_VARIANTS:
        lines.append(f"  {name}: {_approx(family[name])}")
    lines.append(f"max |S| over family: {_approx(max_chsh)}")
    if is_local is None:
        lines.append("locality: not applicable (table is signaling)")
    else:
        lines.append(f"local (all |S| <= 2): {'yes' if is_local else 'NO'}")
    csv_lines = ["variant,value"]
    csv_lines += [f"{name},{_fraction_str(family[name])}" for name in CHSH_VARIANTS]
    emit(config, payload, "\n".join(lines) + "\n", "\n".join(csv_lines) + "\n")
    return EXIT_OK


def cmd_vertex_analyze(config: RunConfig) -> int:
    if not config.table_path:
        raise UsageError("vertex analyze needs --table FILE")
    table = load_table(config.table_path)
    try:
        vs = full_output_vertex_structure(table)
    except VertexRejection as rejection:
        payload = {
            "command": "vertex-analyze",
            "accepted": False,
            "condition": rejection.condition,
            "reason": rejection.message,
        }
        pretty = (
            "not a full-output vertex\n"
            f"  violated condition: {rejection.condition}\n"
            f"  {rejection.message}\n"
        )
        emit(config, payload, pretty)
        return EXIT_NEGATIVE_VERDICT

    model = otp_model_from_vertex(vs)
    round_trip_ok = evaluate_otp(model) == table
    payload = {
        "command": "vertex-analyze",
        "accepted": True,
        "h": [list(row) for row in vs.h],
        "model": spec_to_dict(model),
        "round_trip_ok": round_trip_ok,
    }
    lines = ["full-output vertex accepted"]
    lines.append("  anti-correlation pattern h(x,y) (rows are x):")
    for row in vs.h:
        lines.append("    " + " ".join(str(v) for v in row))
    lines.append("  box model: g = 0, f = h, uniform key")
    lines.append(f"  model reproduces the table exactly: {'yes' if round_trip_ok else 'NO'}")
    emit(config, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_vertex_random(config: RunConfig) -> int:
    seed = _require_seed(config)
    m = config.m if config.m is not None else 2
    n = config.n if config.n is not None else 2
    scenario = Scenario(m, n)
    rng = random.Random(seed)
    h = tuple(tuple(rng.getrandbits(1) for _ in range(n)) for _ in range(m))
    model = OtpBoxSpec(scenario, tuple(0 for _ in range(m)), h, KeyDist.uniform())
    table = evaluate_otp(model)
    payload = table_to_dict(table)
    pretty = pretty_table(table)
    emit(config, payload, pretty, table_csv(table))
    return EXIT_OK


def _resolve_function(config: RunConfig) -> tuple[DistributedFunction, dict]:
    if config.fn_file:
        from .serialize import load_distributed_function

        df = load_distributed_function(config.fn_file)
        descriptor = {"name": None, "m": df.m, "n": df.n, "hex": df.to_hex()}
        return df, descriptor
    if config.fn:
        df = DistributedFunction.named(config.fn, config.m, config.n)
        descriptor = {"name": config.fn, "m": df.m, "n": df.n, "hex": df.to_hex()}
        return df, descriptor
    raise UsageError("vandam needs --fn NAME or --fn-file PATH")


def cmd_vandam(config: RunConfig) -> int:
    seed = _require_seed(config)
    df, descriptor = _resolve_function(config)
    rng = random.Random(seed)

    transcript_sink = None
    if config.transcript:
        transcript_sink = open(config.transcript, "w", encoding="utf-8")

    try:
        if config.exhaustive:
            if config.transcript:

                def writer(x_bits, y_bits, transcript):
                    transcript_sink.write(
                        dumps_canonical(
                            {"event": "run", "x": format_bits(x_bits), "y": format_bits(y_bits)}
                        )
                    )
                    for event in transcript_events(transcript):
                        transcript_sink.write(dumps_canonical(event))

                report = vandam_exhaustive(df, rng, on_transcript=writer)
            else:
                report = vandam_exhaustive(df, rng)
            payload = {
                "command": "vandam",
                "mode": "exhaustive",
                "function": descriptor,
                "seed": seed,
                "total_cases": report.total_cases,
                "correct_cases": report.correct_cases,
                "all_correct": report.all_correct,
                "success_rate": _fraction_str(
                    Fraction(report.correct_cases, report.total_cases)
                ),
                "pool_size": report.pool_size,
                "max_bits_alice_to_bob": report.max_bits_alice_to_bob,
                "max_bits_bob_to_alice": report.max_bits_bob_to_alice,
            }
            pretty = (
                f"exhaustive run of f over all {report.total_cases} input pairs\n"
                f"  correct results: {report.correct_cases}/{report.total_cases}\n"
                f"  PR instances per run: {report.pool_size}\n"
                f"  channel use per run: {report.max_bits_alice_to_bob} bit Alice->Bob, "
                f"{report.max_bits_bob_to_alice} bits Bob->Alice\n"
            )
            emit(config, payload, pretty)
            return EXIT_OK

        if config.x is None or config.y is None:
            raise UsageError("vandam needs --x and --y bit-strings, or --exhaustive")
        x_bits = parse_bits(config.x)
        y_bits = parse_bits(config.y)
        transcript = vandam_run(df, x_bits, y_bits, rng)
        if transcript_sink is not None:
            transcript_sink.write(
                dumps_canonical(
                    {"event": "run", "x": format_bits(x_bits), "y": format_bits(y_bits)}
                )
            )
            for event in transcript_events(transcript):
                transcript_sink.write(dumps_canonical(event))
        expected = df.value(x_bits, y_bits)
        payload = {
            "command": "vandam",
            "mode": "single",
            "function": descriptor,
            "seed": seed,
            "x": format_bits(x_bits),
            "y": format_bits(y_bits),
            "result": transcript.result,
            "expected": expected,
            "correct": transcript.result == expected,
            "pool_size": len(transcript.box_events),
            "bits_alice_to_bob": transcript.bits_alice_to_bob,
            "bits_bob_to_alice": transcript.bits_bob_to_alice,
        }
        pretty = (
            f"f({format_bits(x_bits)}, {format_bits(y_bits)}) computed as {transcript.result} "
            f"(truth table says {expected})\n"
            f"  PR instances used: {len(transcript.box_events)}\n"
            f"  channel use: {transcript.bits_alice_to_bob} bit Alice->Bob, "
            f"{transcript.bits_bob_to_alice} bits Bob->Alice\n"
        )
        emit(config, payload, pretty)
        return EXIT_OK
    finally:
        if transcript_sink is not None:
            transcript_sink.close()


def cmd_simulate_otp(config: RunConfig) -> int:
    if config.spec_path:
        spec = load_spec(config.spec_path)
        if not isinstance(spec, OtpBoxSpec):
            raise DomainError("simulate-otp needs a single-key box spec, not joint keys")
        source = {"kind": "spec", "spec": spec_to_dict(spec)}
    elif config.preset:
        spec = preset_otp_spec(config.preset)
        source = {"kind": "preset", "preset": config.preset}
    else:
        raise UsageError("simulate-otp needs --spec FILE or --preset pr|anti-pr")

    rng = None
    if config.trials:
        rng = random.Random(_require_seed(config))
    result = simulate_otp_via_pr(spec, config.trials, rng)
    direct = evaluate_otp(spec)
    matches = result.exact == direct

    payload = {
        "command": "simulate-otp",
        "source": source,
        "seed": config.seed if config.trials else None,
        "trials_per_cell": result.trials_per_cell,
        "exact_table": table_to_dict(result.exact),
        "matches_direct_evaluation": matches,
    }
    lines = [
        f"pool simulation with {spec.scenario.n} PR instances per run",
        f"induced table equals direct box evaluation: {'yes' if matches else 'NO'}",
    ]
    if result.empirical is not None:
        deviations = []
        support_ok = True
        for x, y in spec.scenario.input_pairs():
            for a in (0, 1):
                for b in (0, 1):
                    p = result.exact.entries[x][y][a][b]
                    emp = result.empirical.entries[x][y][a][b]
                    if p in (0, 1):
                        support_ok = support_ok and emp == p
                    else:
                        sigma = math.sqrt(float(p * (1 - p)) / result.trials_per_cell)
                        deviations.append(abs(float(emp - p)) / sigma)
        max_sigma = max(deviations) if deviations else 0.0
        payload["empirical_table"] = table_to_dict(result.empirical)
        payload["support_ok"] = support_ok
        payload["max_sigma_deviation"] = max_sigma
        lines.append(f"empirical trials per input pair: {result.trials_per_cell}")
        lines.append(f"support respected (zero cells stay zero): {'yes' if support_ok else 'NO'}")
        lines.append(f"largest deviation: {max_sigma:.3f} binomial sigma")
    pretty = "\n".join(lines) + "\n" + pretty_table(result.exact)
    emit(config, payload, pretty)
    return EXIT_OK


def _grid_values(grid: tuple[Fraction, Fraction, int]) -> list[Fraction]:
    start, stop, steps = grid
    if steps < 1:
        raise DomainError("grid needs at least one step")
    if steps == 1:
        if start != stop:
            raise DomainError("a single-point grid needs start == stop")
        return [start]
    step = (stop - start) / (steps - 1)
    return [start + i * step for i in range(steps)]


def cmd_ic(config: RunConfig) -> int:
    if config.family not in ("notp", "noisy-ontic"):
        raise UsageError("ic needs --family notp or --family noisy-ontic")
    if config.grid is None:
        raise UsageError("ic needs --grid start:stop:steps")
    values = _grid_values(config.grid)

    from .analysis import notp_model_from_isotropic

    rows = []
    for mu in values:
        if config.family == "notp":
            _, report = rac_run_notp(mu)
            table = evaluate_notp(notp_model_from_isotropic(mu))
        else:
            _, report = rac_run_noisy_ontic(mu)
            table = noisy_ontic_box(mu)
        chsh = chsh_value(table)
        rows.append(
            {
                "mu": _fraction_str(mu),
                "mu_float": float(mu),
                "i2_simulated": report.i_n,
                "i2_closed_form": report.closed_form,
                "discrepancy": report.discrepancy,
                "ic_satisfied": report.ic_satisfied,
                "mutual_informations": list(report.mutual_informations),
                "chsh": _fraction_str(chsh),
            }
        )

    payload = {
        "command": "ic",
        "family": config.family,
        "grid": {
            "start": _fraction_str(config.grid[0]),
            "stop": _fraction_str(config.grid[1]),
            "steps": config.grid[2],
        },
        "m_cbits": 1,
        "rows": rows,
    }
    mu_star = None
    if config.family == "notp":
        mu_star = ic_threshold_notp()
        payload["threshold_mu_star"] = mu_star

    closed_label = "2-2h(mu)" if config.family == "notp" else "2-h(mu)"
    lines = [f"random access code sweep, family {config.family} (closed form {closed_label})"]
    if mu_star is not None:
        lines.append(f"IC threshold mu* = {mu_star:.12f} (h(mu*) = 1/2)")
    lines.append(f"{'mu':>10} {'I2':>12} {'closed':>12} {'|diff|':>10} {'IC':>10} {'CHSH':>8}")
    for row in rows:
        lines.append(
            f"{row['mu']:>10} {row['i2_simulated']:>12.8f} {row['i2_closed_form']:>12.8f} "
            f"{row['discrepancy']:>10.2e} {'ok' if row['ic_satisfied'] else 'violated':>10} "
            f"{row['chsh']:>8}"
        )

    csv_lines = [f"# family = {config.family}"]
    if mu_star is not None:
        csv_lines.append(f"# mu_star = {mu_star!r}")
    csv_lines.append("mu,I2_simulated,I2_closed_form,discrepancy,ic_satisfied,mu_float,chsh")
    for row in rows:
        csv_lines.append(
            f"{row['mu']},{row['i2_simulated']!r},{row['i2_closed_form']!r},"
            f"{row['discrepancy']!r},{'true' if row['ic_satisfied'] else 'false'},"
            f"{row['mu_float']!r},{row['chsh']}"
        )
    emit(config, payload, "\n".join(lines) + "\n", "\n".join(csv_lines) + "\n")
    return EXIT_OK


def cmd_version(config: RunConfig) -> int:
    payload = {"command": "version", "version": __version__}
    emit(config, payload, f"otplab {__version__}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _parse_grid(text: str) -> tuple[Fraction, Fraction, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:steps")
    try:
        start = Fraction(parts[0])
        stop = Fraction(parts[1])
        steps = int(parts[2])
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from exc
    return start, stop, steps


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        dest="fmt",
        choices=("pretty", "json", "csv"),
        default="pretty",
        help="output format (default pretty)",
    )
    parser.add_argument("--output", help="write the report to this path instead of stdout")


def _add_source_args(parser: argparse.ArgumentParser, with_table: bool = True) -> None:
    parser.add_argument("--preset", help="pr | anti-pr | iso:q | noisy-ontic:mu")
    parser.add_argument("--spec", dest="spec_path", help="box spec JSON file")
    if with_table:
        parser.add_argument("--table", dest="table_path", help="correlation table JSON file")


def _add_seed_arg(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed", type=int, help=f"RNG seed (falls back to ${SEED_ENV_VAR})"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="otplab",
        description="nonlocal boxes as one-time-pad hidden-variable crypto-systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    box = sub.add_parser("box", help="box construction and evaluation")
    box_sub = box.add_subparsers(dest="box_command", required=True)
    box_eval = box_sub.add_parser("eval", help="evaluate a box into its exact table")
    _add_source_args(box_eval, with_table=False)
    _add_output_args(box_eval)

    nsc = sub.add_parser("ns-check", help="no-signaling test with witnesses")
    _add_source_args(nsc)
    _add_output_args(nsc)

    chsh = sub.add_parser("chsh", help="CHSH family values and locality verdict")
    _add_source_args(chsh)
    chsh.add_argument(
        "--variant",
        choices=CHSH_VARIANTS,
        default=CANONICAL_CHSH_VARIANT,
        help="which sign pattern to headline (default chsh-neg-11)",
    )
    _add_output_args(chsh)

    vertex = sub.add_parser("vertex", help="full-output vertex tools")
    vertex_sub = vertex.add_subparsers(dest="vertex_command", required=True)
    analyze = vertex_sub.add_parser("analyze", help="recognize a vertex and extract its model")
    analyze.add_argument("--table", dest="table_path", required=True)
    _add_output_args(analyze)
    vrandom = vertex_sub.add_parser("random", help="emit a random full-output vertex table")
    vrandom.add_argument("--m", type=int, default=2, help="Alice input count (default 2)")
    vrandom.add_argument("--n", type=int, default=2, help="Bob input count (default 2)")
    _add_seed_arg(vrandom)
    _add_output_args(vrandom)

    vandam = sub.add_parser("vandam", help="distributed computation with 1 classical bit")
    vandam.add_argument("--fn", help="AND | IP2 | IP3 | RANDOM:seed")
    vandam.add_argument("--fn-file", dest="fn_file", help="hex truth-table file")
    vandam.add_argument("--m", type=int, help="Alice string length (for RANDOM:seed)")
    vandam.add_argument("--n", type=int, help="Bob string length (for RANDOM:seed)")
    vandam.add_argument("--x", help="Alice input bits, e.g. 101")
    vandam.add_argument("--y", help="Bob input bits")
    vandam.add_argument("--exhaustive", action="store_true", help="run all input pairs")
    vandam.add_argument("--transcript", help="write run transcripts to this JSONL file")
    _add_seed_arg(vandam)
    _add_output_args(vandam)

    sim = sub.add_parser("simulate-otp", help="simulate a uniform-key box with PR instances")
    _add_source_args(sim, with_table=False)
    sim.add_argument(
        "--trials", type=int, default=0, help="empirical runs per input pair (default 0)"
    )
    _add_seed_arg(sim)
    _add_output_args(sim)

    ic = sub.add_parser("ic", help="information-causality sweep over mu")
    ic.add_argument("--family", choices=("notp", "noisy-ontic"), required=True)
    ic.add_argument("--grid", type=_parse_grid, required=True, help="start:stop:steps")
    _add_output_args(ic)

    version = sub.add_parser("version", help="print the version")
    _add_output_args(version)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    command = args.command
    if command == "box":
        command = f"box-{args.box_command}"
    elif command == "vertex":
        command = f"vertex-{args.vertex_command}"

    seed = getattr(args, "seed", None)
    if seed is None and os.environ.get(SEED_ENV_VAR):
        try:
            seed = int(os.environ[SEED_ENV_VAR])
        except ValueError as exc:
            raise UsageError(f"${SEED_ENV_VAR} is not an integer: {exc}") from exc

    return RunConfig(
        command=command,
        fmt=getattr(args, "fmt", "pretty"),
        output=getattr(args, "output", None),
        seed=seed,
        preset=getattr(args, "preset", None),
        spec_path=getattr(args, "spec_path", None),
        table_path=getattr(args, "table_path", None),
        variant=getattr(args, "variant", CANONICAL_CHSH_VARIANT),
        m=getattr(args, "m", None),
        n=getattr(args, "n", None),
        fn=getattr(args, "fn", None),
        fn_file=getattr(args, "fn_file", None),
        x=getattr(args, "x", None),
        y=getattr(args, "y", None),
        exhaustive=getattr(args, "exhaustive", False),
        transcript=getattr(args, "transcript", None),
        trials=getattr(args, "trials", 0),
        family=getattr(args, "family", None),
        grid=getattr(args, "grid", None),
    )


COMMANDS = {
    "box-eval": cmd_box_eval,
    "ns-check": cmd_ns_check,
    "chsh": cmd_chsh,
    "vertex-analyze": cmd_vertex_analyze,
    "vertex-random": cmd_vertex_random,
    "vandam": cmd_vandam,
    "simulate-otp": cmd_simulate_otp,
    "ic": cmd_ic,
    "version": cmd_version,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        return COMMANDS[config.command](config)
    except (UsageError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SPEC_ERROR
    except (DomainError, PreconditionError, ProtocolError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN_ERROR


if __name__ == "__main__":
    sys.exit(main())
