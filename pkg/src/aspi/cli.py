"""Batch experiment runner and persistence.

Subcommands are thin bindings onto the library: ``eval`` and
``fundseq`` onto the hierarchy/ordinal engines, ``te`` onto exact cost
measurement, ``play`` onto the arena, ``profile`` onto the measure
profiles, ``enumerate`` onto the machine enumeration.

Exit codes: 0 success, 2 a budget/limit outcome (reportable, not a
bug), 1 anything else.  ``profile`` runs are reproducible: the run
record embeds the full config and a content digest of the result body,
and identical config+seed produce byte-identical bodies (timestamps
live outside the digested body).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .arena import learned, play
from .defaults import DEFAULT_BUDGET, DEFAULT_MAX_TE_N, DEFAULT_PER_RUN_LIMIT
from .errors import (
    AspiError,
    BudgetExceeded,
    ConfigError,
    IoFailure,
    LimitExceeded,
    SchemaMismatch,
)
from .growth import growth_from_name
from .hierarchy import EvalBudget, HierarchyKind, eval_hierarchy
from .machine import (
    MACHINE_MODEL_ID,
    exact_te,
    format_program,
    nth_machine,
    parse_program_spec,
)
from .measures import (
    PR_ENUMERATION_SCHEME,
    SuiteConfig,
    aspi_bigO_estimate,
    aspi_hierarchy_profile,
    original_hibbard_measure_empirical,
)
from .ordinal import format_ordinal, fundamental_sequence, parse_ordinal
from .zoo import parse_evader, parse_predictor

SCHEMA_VERSION = 1

_KIND_BY_NAME = {k.value: k for k in HierarchyKind}


def _canonical_json(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def _digest(data) -> str:
    return hashlib.sha256(_canonical_json(data).encode()).hexdigest()


# -- run records -------------------------------------------------------


@dataclass(frozen=True)
class RunRecord:
    schema_version: int
    artifact_version: str
    machine_model: str
    config_digest: str
    created_at: str
    body: dict

    @property
    def body_digest(self) -> str:
        return _digest(self.body)

    def to_json_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "artifact_version": self.artifact_version,
            "machine_model": self.machine_model,
            "config_digest": self.config_digest,
            "created_at": self.created_at,
            "body": self.body,
            "body_digest": self.body_digest,
        }


def make_record(config: dict, body: dict) -> RunRecord:
    return RunRecord(
        schema_version=SCHEMA_VERSION,
        artifact_version=__version__,
        machine_model=MACHINE_MODEL_ID,
        config_digest=_digest(config),
        created_at=datetime.now(timezone.utc).isoformat(),
        body=body,
    )


def persist(record: RunRecord, path) -> None:
    try:
        Path(path).write_text(json.dumps(record.to_json_dict(), indent=2, sort_keys=True))
    except OSError as exc:
        raise IoFailure(f"cannot write run record to {path}: {exc}") from exc


def load(path) -> RunRecord:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise IoFailure(f"cannot read run record from {path}: {exc}") from exc
    version = raw.get("schema_version")
    if not isinstance(version, int) or version > SCHEMA_VERSION:
        raise SchemaMismatch(
            f"record schema {version!r} not supported (this build reads <= {SCHEMA_VERSION})"
        )
    record = RunRecord(
        schema_version=version,
        artifact_version=raw.get("artifact_version", ""),
        machine_model=raw.get("machine_model", ""),
        config_digest=raw.get("config_digest", ""),
        created_at=raw.get("created_at", ""),
        body=raw.get("body", {}),
    )
    stored = raw.get("body_digest")
    if stored is not None and stored != record.body_digest:
        raise SchemaMismatch("record body does not match its stored digest")
    return record


# -- config ------------------------------------------------------------

_CONFIG_SCHEMA = {
    "seed": int,
    "predictor": str,
    "horizon": int,
    "window": int,
    "measure": {
        "kind": str,
        "hierarchy": str,
        "ladder": list,
        "m_max": int,
    },
    "suite": {
        "patterns": list,
        "count": int,
        "verify_end": int,
        "fit_start": int,
        "scales": list,
        "pinned": list,
    },
    "budget": {
        "max_expansions": int,
        "max_bits": int,
    },
    "output": {
        "dir": str,
        "transcripts": bool,
    },
}

_REQUIRED = ("seed", "predictor", "horizon", "window", "measure")


def _check_keys(data: dict, schema: dict, prefix: str, violations: list[str]):
    for key, value in data.items():
        if key not in schema:
            violations.append(f"unknown key '{prefix}{key}'")
            continue
        expected = schema[key]
        if isinstance(expected, dict):
            if not isinstance(value, dict):
                violations.append(f"{prefix}{key} must be a mapping")
            else:
                _check_keys(value, expected, f"{prefix}{key}.", violations)
        elif expected is int and isinstance(value, bool):
            violations.append(f"{prefix}{key} must be an integer")
        elif not isinstance(value, expected):
            violations.append(f"{prefix}{key} must be {expected.__name__}")


def validate_config(config: dict) -> None:
    """Collects every violation before raising, so one pass fixes all."""
    violations: list[str] = []
    if not isinstance(config, dict):
        raise ConfigError(["config root must be a mapping"])
    _check_keys(config, _CONFIG_SCHEMA, "", violations)
    for key in _REQUIRED:
        if key not in config:
            violations.append(f"missing required key {key!r}")
    measure = config.get("measure", {})
    kind = measure.get("kind") if isinstance(measure, dict) else None
    if kind not in ("hierarchy", "bigO", "hibbard"):
        violations.append("measure.kind must be one of hierarchy|bigO|hibbard")
    if kind == "hierarchy":
        if measure.get("hierarchy") not in _KIND_BY_NAME:
            violations.append("measure.hierarchy must be slow|fast|hardy")
        if not measure.get("ladder"):
            violations.append("measure.ladder (ordinal list) required for hierarchy")
    if kind == "bigO" and not measure.get("ladder"):
        violations.append("measure.ladder (growth-name list) required for bigO")
    if kind == "hibbard" and not isinstance(measure.get("m_max"), int):
        violations.append("measure.m_max (int) required for hibbard")
    for cap in ("horizon", "window", "seed"):
        if isinstance(config.get(cap), int) and config[cap] < 0:
            violations.append(f"{cap} must be non-negative")
    if (
        isinstance(config.get("horizon"), int)
        and isinstance(config.get("window"), int)
        and config["window"] > config["horizon"]
    ):
        violations.append("window must not exceed horizon")
    if violations:
        raise ConfigError(violations)


def _suite_from_config(config: dict) -> SuiteConfig:
    raw = config.get("suite", {})
    kwargs = {}
    if "patterns" in raw:
        kwargs["patterns"] = tuple(raw["patterns"])
    if "count" in raw:
        kwargs["count"] = raw["count"]
    if "verify_end" in raw:
        kwargs["verify_end"] = raw["verify_end"]
    if "fit_start" in raw:
        kwargs["fit_start"] = raw["fit_start"]
    if "scales" in raw:
        kwargs["scales"] = tuple(Fraction(s) for s in raw["scales"])
    if "pinned" in raw:
        kwargs["pinned"] = tuple(parse_evader(name) for name in raw["pinned"])
    return SuiteConfig(seed=config.get("seed", 0), **kwargs)


def _budget_from_config(config: dict) -> EvalBudget:
    raw = config.get("budget")
    if not raw:
        return DEFAULT_BUDGET
    return EvalBudget(
        max_expansions=raw.get("max_expansions", DEFAULT_BUDGET.max_expansions),
        max_bits=raw.get("max_bits", DEFAULT_BUDGET.max_bits),
    )


def run_profile_config(config: dict):
    """Execute a profile experiment; returns (profile, record)."""
    validate_config(config)
    predictor = parse_predictor(config["predictor"])
    suite = _suite_from_config(config)
    budget = _budget_from_config(config)
    horizon, window = config["horizon"], config["window"]
    measure = config["measure"]
    if measure["kind"] == "hierarchy":
        kind = _KIND_BY_NAME[measure["hierarchy"]]
        ladder = [parse_ordinal(text) for text in measure["ladder"]]
        profile = aspi_hierarchy_profile(
            predictor, kind, ladder, suite, budget, horizon, window
        )
    elif measure["kind"] == "bigO":
        ladder = [growth_from_name(name, budget) for name in measure["ladder"]]
        profile = aspi_bigO_estimate(predictor, ladder, suite, horizon, window)
    else:
        profile = original_hibbard_measure_empirical(
            predictor, measure["m_max"], suite, horizon, window, budget
        )
    body = {
        "config": config,
        "profile": profile.to_json_dict(),
        "enumeration": PR_ENUMERATION_SCHEME,
    }
    return profile, make_record(config, body)


# -- subcommands -------------------------------------------------------


def _cmd_eval(args) -> int:
    budget = EvalBudget(int(float(args.max_expansions)), int(float(args.max_bits)))
    alpha = parse_ordinal(args.ordinal)
    kind = _KIND_BY_NAME[args.hierarchy]
    try:
        value = eval_hierarchy(kind, alpha, args.n, budget)
    except BudgetExceeded as exc:
        print(
            json.dumps(
                {
                    "outcome": "budget_exceeded",
                    "limit": exc.limit,
                    "expansions": exc.expansions,
                    "hierarchy": args.hierarchy,
                    "ordinal": format_ordinal(alpha),
                    "n": args.n,
                }
            )
        )
        return 2
    print(value)
    return 0


def _cmd_fundseq(args) -> int:
    lam = parse_ordinal(args.ordinal)
    print(format_ordinal(fundamental_sequence(lam, args.i)))
    return 0


def _cmd_te(args) -> int:
    if args.index is not None:
        program = nth_machine(args.index)
    elif args.program:
        program = parse_program_spec(args.program)
    else:
        print("te: need --program or --index", file=sys.stderr)
        return 1
    lines = ["n,te"]
    try:
        for n in range(0, args.max_n + 1):
            lines.append(f"{n},{exact_te(program, n, args.limit, max_n=args.max_n)}")
    except LimitExceeded as exc:
        print(f"te: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return 0


def _cmd_play(args) -> int:
    predictor = parse_predictor(args.predictor)
    evader = parse_evader(args.evader)
    transcript = play(predictor.build(), evader.build(), args.horizon)
    window = args.window or max(1, args.horizon // 3)
    verdict = learned(transcript, window)
    if args.csv:
        Path(args.csv).write_text(transcript.to_csv())
    summary = {
        "predictor": predictor.name,
        "evader": evader.name,
        "predictor_wins": transcript.predictor_wins(),
        **verdict.to_json_dict(),
    }
    if args.json:
        Path(args.json).write_text(json.dumps(summary, indent=2, sort_keys=True))
    print(
        f"{predictor.name} vs {evader.name}: wins {transcript.predictor_wins()}/{args.horizon}, "
        f"learned={verdict.learned} (H={args.horizon}, W={window}, "
        f"last_loss={verdict.last_loss_round})"
    )
    return 0


def _cmd_profile(args) -> int:
    try:
        config = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"profile: cannot read config: {exc}", file=sys.stderr)
        return 1
    profile, record = run_profile_config(config)
    out_dir = Path(
        os.environ.get("ASPI_OUT_DIR")
        or args.out_dir
        or config.get("output", {}).get("dir", ".")
    )
    out_dir.mkdir(parents=True, exist_ok=True)
    record_path = out_dir / "record.json"
    persist(record, record_path)
    csv_path = out_dir / "summary.csv"
    rows = ["level,outcome,failed_on"]
    rows += [",".join(row) for row in profile.csv_rows()]
    csv_path.write_text("\n".join(rows) + "\n")
    print(f"ladder: {' < '.join(profile.ladder)}")
    for outcome in profile.outcomes:
        extra = f" (failed on {outcome.failed_on})" if outcome.failed_on else ""
        print(f"  {outcome.level}: {outcome.status}{extra}")
    estimate = profile.estimate_label or "below first level"
    tag = " (at least: full ladder passed)" if profile.at_least else ""
    print(f"estimate: {estimate}{tag}")
    print(f"wrote {record_path} and {csv_path} (body digest {record.body_digest[:16]})")
    return 0


def _cmd_enumerate(args) -> int:
    print("index,bits,spec,instructions")
    for i in range(args.start, args.start + args.count):
        program = nth_machine(i)
        print(f"{i},{program.code or '-'},{format_program(program)},{len(program.instructions)}")
        if args.listing and program.instructions:
            for line in program.listing().splitlines():
                print(f"    {line}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aspi",
        description="Adversarial sequence prediction laboratory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a hierarchy level")
    p.add_argument("--hierarchy", choices=sorted(_KIND_BY_NAME), required=True)
    p.add_argument("--ordinal", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-expansions", default="1e6")
    p.add_argument("--max-bits", default="1e6")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("fundseq", help="fundamental sequence entry of a limit ordinal")
    p.add_argument("--ordinal", required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(fn=_cmd_fundseq)

    p = sub.add_parser("te", help="exact worst-case step counts of a program")
    p.add_argument("--program", help="len=<bits>,hex=<digits>")
    p.add_argument("--index", type=int, help="1-based machine index")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--limit", type=int, default=DEFAULT_PER_RUN_LIMIT)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_te)

    p = sub.add_parser("play", help="play one game")
    p.add_argument("--predictor", required=True)
    p.add_argument("--evader", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--window", type=int)
    p.add_argument("--csv", help="write the transcript here")
    p.add_argument("--json", help="write the verdict summary here")
    p.set_defaults(fn=_cmd_play)

    p = sub.add_parser("profile", help="run a measure profile from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir")
    p.set_defaults(fn=_cmd_profile)

    p = sub.add_parser("enumerate", help="walk the canonical machine enumeration")
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--listing", action="store_true")
    p.set_defaults(fn=_cmd_enumerate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"aspi: {exc}", file=sys.stderr)
        return 1
    except (BudgetExceeded, LimitExceeded) as exc:
        print(f"aspi: {exc}", file=sys.stderr)
        return 2
    except AspiError as exc:
        print(f"aspi: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
