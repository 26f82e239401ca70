"""Canonical text formats for instances, schedules and results.

All structured documents are JSON with two-space indent, a trailing
newline and fixed key order; rationals appear as lowest-terms "p/q"
strings (a "7/4" heat is emitted verbatim, never as a float). Parsing
is strict: unknown fields are rejected, rationals must be "p/q" or a
finite decimal, and every diagnostic names the offending field. The
point of one canonical byte form is that round-trip and determinism
tests can compare serialized documents directly.

Reduction source files are plain integer tokens with '#' comments;
see parse_three_partition_source and parse_n3dm_source.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Optional, Sequence

from .adversary import (
    AdversaryTranscript,
    BoundCounterexample,
    RandomModel,
    RatioRecord,
    RatioReport,
)
from .model import (
    Instance,
    Job,
    Schedule,
    SimulationTrace,
    ThermalConfig,
    Violation,
)
from .policies import OnlineRun
from .reductions import (
    JobOrigin,
    N3DMInstance,
    ReductionMeta,
    ThreePartitionInstance,
)

_FRACTION_RE = re.compile(r"[+-]?\d+/\d+\Z")
_DECIMAL_RE = re.compile(r"[+-]?\d+(\.\d+)?\Z")


class ParseError(ValueError):
    """Input text does not conform to a canonical format."""


def format_rational(value: Fraction) -> str:
    """Lowest-terms "p/q" form, denominator always spelled out."""
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: Any, where: str = "value") -> Fraction:
    """Exact rational from "p/q" or a finite decimal string."""
    if not isinstance(text, str):
        raise ParseError(f"{where}: expected a rational string, got {text!r}")
    token = text.strip()
    if _FRACTION_RE.fullmatch(token):
        numerator, denominator = token.split("/")
        if int(denominator) == 0:
            raise ParseError(f"{where}: zero denominator in {token!r}")
        return Fraction(int(numerator), int(denominator))
    if _DECIMAL_RE.fullmatch(token):
        return Fraction(token)
    raise ParseError(f"{where}: {token!r} is not 'p/q' or a finite decimal")


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: {exc.msg}") from None


def _dumps(document: Any) -> str:
    return json.dumps(document, indent=2) + "\n"


def _require_object(value: Any, where: str, fields: Sequence[str]) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"{where}: expected an object, got {type(value).__name__}")
    missing = [f for f in fields if f not in value]
    if missing:
        raise ParseError(f"{where}: missing field(s) {', '.join(missing)}")
    unknown = [k for k in value if k not in fields]
    if unknown:
        raise ParseError(f"{where}: unknown field(s) {', '.join(unknown)}")
    return value


def _require_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _require_list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected an array, got {type(value).__name__}")
    return value


# -- instances ---------------------------------------------------------

def serialize_instance(instance: Instance) -> str:
    return _dumps(_instance_document(instance))


def _instance_document(instance: Instance) -> dict:
    return {
        "threshold": format_rational(instance.config.threshold),
        "cooling_factor": format_rational(instance.config.cooling_factor),
        "jobs": [
            {
                "id": job.id,
                "release": job.release,
                "deadline": job.deadline,
                "heat": format_rational(job.heat),
            }
            for job in instance.jobs
        ],
    }


def parse_instance(text: str) -> Instance:
    document = _require_object(
        _loads(text), "instance", ("threshold", "cooling_factor", "jobs")
    )
    config = ThermalConfig(
        threshold=parse_rational(document["threshold"], "threshold"),
        cooling_factor=parse_rational(document["cooling_factor"], "cooling_factor"),
    )
    jobs = []
    for pos, entry in enumerate(_require_list(document["jobs"], "jobs")):
        where = f"jobs[{pos}]"
        obj = _require_object(entry, where, ("id", "release", "deadline", "heat"))
        jobs.append(
            Job(
                id=_require_int(obj["id"], f"{where}.id"),
                release=_require_int(obj["release"], f"{where}.release"),
                deadline=_require_int(obj["deadline"], f"{where}.deadline"),
                heat=parse_rational(obj["heat"], f"{where}.heat"),
            )
        )
    return Instance(jobs=tuple(jobs), config=config)


# -- schedules ---------------------------------------------------------

def serialize_schedule(schedule: Schedule) -> str:
    return _dumps(list(schedule.slots))


def parse_schedule(text: str) -> Schedule:
    entries = _require_list(_loads(text), "schedule")
    slots: list[Optional[int]] = []
    for pos, entry in enumerate(entries):
        if entry is None:
            slots.append(None)
        else:
            slots.append(_require_int(entry, f"slot[{pos}]"))
    return Schedule(tuple(slots))


# -- traces ------------------------------------------------------------

def serialize_trace(trace: SimulationTrace) -> str:
    return _dumps(_trace_document(trace))


def _trace_document(trace: SimulationTrace) -> dict:
    return {
        "temperatures": [format_rational(t) for t in trace.temperatures],
        "completed": sorted(trace.completed),
        "throughput": trace.throughput,
        "violations": [
            {"time": v.time, "kind": v.kind, "job": v.job} for v in trace.violations
        ],
    }


def parse_trace(text: str) -> SimulationTrace:
    return _trace_from(_loads(text), "trace")


def _trace_from(value: Any, where: str) -> SimulationTrace:
    document = _require_object(
        value, where, ("temperatures", "completed", "throughput", "violations")
    )
    temperatures = tuple(
        parse_rational(t, f"{where}.temperatures[{pos}]")
        for pos, t in enumerate(_require_list(document["temperatures"], f"{where}.temperatures"))
    )
    completed = frozenset(
        _require_int(i, f"{where}.completed[{pos}]")
        for pos, i in enumerate(_require_list(document["completed"], f"{where}.completed"))
    )
    violations = []
    for pos, entry in enumerate(_require_list(document["violations"], f"{where}.violations")):
        vwhere = f"{where}.violations[{pos}]"
        obj = _require_object(entry, vwhere, ("time", "kind", "job"))
        if not isinstance(obj["kind"], str):
            raise ParseError(f"{vwhere}.kind: expected a string")
        job = None if obj["job"] is None else _require_int(obj["job"], f"{vwhere}.job")
        violations.append(Violation(_require_int(obj["time"], f"{vwhere}.time"), obj["kind"], job))
    return SimulationTrace(
        temperatures=temperatures,
        completed=completed,
        throughput=_require_int(document["throughput"], f"{where}.throughput"),
        violations=tuple(violations),
    )


# -- online runs and transcripts ----------------------------------------

def serialize_run(run: OnlineRun) -> str:
    return _dumps(_run_document(run))


def _run_document(run: OnlineRun) -> dict:
    return {
        "schedule": list(run.schedule.slots),
        "trace": _trace_document(run.trace),
        "decisions": [
            {
                "time": d.time,
                "temperature": format_rational(d.temperature),
                "pending": list(d.pending),
                "decision": d.decision,
            }
            for d in run.decisions
        ],
    }


def serialize_transcript(transcript: AdversaryTranscript) -> str:
    return _dumps(
        {
            "branch": transcript.branch,
            "instance": _instance_document(transcript.instance),
            "algorithm": _run_document(transcript.run),
            "adversary_schedule": list(transcript.adversary_schedule.slots),
            "adversary_trace": _trace_document(transcript.adversary_trace),
            "alg_throughput": transcript.alg_throughput,
            "adv_throughput": transcript.adv_throughput,
        }
    )


# -- ratio reports -------------------------------------------------------

def serialize_report(report: RatioReport) -> str:
    def ratio(value: Optional[Fraction]) -> Optional[str]:
        return None if value is None else format_rational(value)

    names = report.policies
    return _dumps(
        {
            "model": {
                "n": report.model.n,
                "release_span": report.model.release_span,
                "max_window": report.model.max_window,
                "heat_denominator": report.model.heat_denominator,
                "heat_numerator_max": report.model.heat_numerator_max,
                "seed": report.model.seed,
            },
            "count": report.count,
            "policies": list(names),
            "records": [
                {
                    "seed": r.seed,
                    "opt": r.opt,
                    "proven_optimal": r.proven_optimal,
                    "throughputs": dict(zip(names, r.throughputs)),
                    "ratios": {n: ratio(x) for n, x in zip(names, r.ratios)},
                }
                for r in report.records
            ],
            "skipped_zero_opt": report.skipped_zero_opt,
            "max_ratios": {n: ratio(x) for n, x in zip(names, report.max_ratios)},
            "mean_ratios": {n: ratio(x) for n, x in zip(names, report.mean_ratios)},
            "counterexamples": [
                {"seed": c.seed, "policy": c.policy, "opt": c.opt, "throughput": c.throughput}
                for c in report.counterexamples
            ],
        }
    )


def parse_report(text: str) -> RatioReport:
    document = _require_object(
        _loads(text),
        "report",
        (
            "model",
            "count",
            "policies",
            "records",
            "skipped_zero_opt",
            "max_ratios",
            "mean_ratios",
            "counterexamples",
        ),
    )
    model_obj = _require_object(
        document["model"],
        "model",
        ("n", "release_span", "max_window", "heat_denominator", "heat_numerator_max", "seed"),
    )
    model = RandomModel(**{k: _require_int(v, f"model.{k}") for k, v in model_obj.items()})
    names = tuple(document["policies"])
    for pos, name in enumerate(names):
        if not isinstance(name, str):
            raise ParseError(f"policies[{pos}]: expected a string")

    def named_ratios(obj: Any, where: str) -> tuple[Optional[Fraction], ...]:
        mapping = _require_object(obj, where, names)
        return tuple(
            None if mapping[n] is None else parse_rational(mapping[n], f"{where}.{n}")
            for n in names
        )

    records = []
    for pos, entry in enumerate(_require_list(document["records"], "records")):
        where = f"records[{pos}]"
        obj = _require_object(
            entry, where, ("seed", "opt", "proven_optimal", "throughputs", "ratios")
        )
        if not isinstance(obj["proven_optimal"], bool):
            raise ParseError(f"{where}.proven_optimal: expected a boolean")
        throughputs = _require_object(obj["throughputs"], f"{where}.throughputs", names)
        records.append(
            RatioRecord(
                seed=_require_int(obj["seed"], f"{where}.seed"),
                opt=_require_int(obj["opt"], f"{where}.opt"),
                proven_optimal=obj["proven_optimal"],
                throughputs=tuple(
                    _require_int(throughputs[n], f"{where}.throughputs.{n}") for n in names
                ),
                ratios=named_ratios(obj["ratios"], f"{where}.ratios"),
            )
        )
    counterexamples = []
    for pos, entry in enumerate(_require_list(document["counterexamples"], "counterexamples")):
        where = f"counterexamples[{pos}]"
        obj = _require_object(entry, where, ("seed", "policy", "opt", "throughput"))
        if not isinstance(obj["policy"], str):
            raise ParseError(f"{where}.policy: expected a string")
        counterexamples.append(
            BoundCounterexample(
                seed=_require_int(obj["seed"], f"{where}.seed"),
                policy=obj["policy"],
                opt=_require_int(obj["opt"], f"{where}.opt"),
                throughput=_require_int(obj["throughput"], f"{where}.throughput"),
            )
        )
    return RatioReport(
        model=model,
        count=_require_int(document["count"], "count"),
        policies=names,
        records=tuple(records),
        skipped_zero_opt=_require_int(document["skipped_zero_opt"], "skipped_zero_opt"),
        max_ratios=named_ratios(document["max_ratios"], "max_ratios"),
        mean_ratios=named_ratios(document["mean_ratios"], "mean_ratios"),
        counterexamples=tuple(counterexamples),
    )


# -- reduction metadata ---------------------------------------------------

def serialize_reduction_meta(meta: ReductionMeta) -> str:
    """Sidecar document: origins and interval geometry, not the instance."""
    return _dumps(
        {
            "kind": meta.kind,
            "n": meta.n,
            "beta": meta.beta,
            "origins": [
                {"job": o.job_id, "role": o.role, "index": o.index, "value": o.value}
                for o in meta.origins
            ],
            "intervals": [list(interval) for interval in meta.intervals],
        }
    )


def parse_reduction_meta(text: str, instance: Instance) -> ReductionMeta:
    """Rebuild a ReductionMeta from its sidecar plus the generated instance."""
    document = _require_object(
        _loads(text), "meta", ("kind", "n", "beta", "origins", "intervals")
    )
    if not isinstance(document["kind"], str):
        raise ParseError("meta.kind: expected a string")
    origins = []
    known_ids = {job.id for job in instance.jobs}
    for pos, entry in enumerate(_require_list(document["origins"], "origins")):
        where = f"origins[{pos}]"
        obj = _require_object(entry, where, ("job", "role", "index", "value"))
        job_id = _require_int(obj["job"], f"{where}.job")
        if job_id not in known_ids:
            raise ParseError(f"{where}.job: id {job_id} is not in the instance")
        if not isinstance(obj["role"], str):
            raise ParseError(f"{where}.role: expected a string")
        value = None if obj["value"] is None else _require_int(obj["value"], f"{where}.value")
        origins.append(
            JobOrigin(
                job_id=job_id,
                role=obj["role"],
                index=_require_int(obj["index"], f"{where}.index"),
                value=value,
            )
        )
    intervals = []
    for pos, entry in enumerate(_require_list(document["intervals"], "intervals")):
        where = f"intervals[{pos}]"
        pair = _require_list(entry, where)
        if len(pair) != 2:
            raise ParseError(f"{where}: expected [start, end]")
        intervals.append(
            (_require_int(pair[0], f"{where}[0]"), _require_int(pair[1], f"{where}[1]"))
        )
    return ReductionMeta(
        kind=document["kind"],
        n=_require_int(document["n"], "n"),
        beta=_require_int(document["beta"], "beta"),
        instance=instance,
        origins=tuple(origins),
        intervals=tuple(intervals),
    )


# -- reduction source files -----------------------------------------------

def _int_tokens(text: str, what: str) -> list[int]:
    tokens: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        for token in body.split():
            try:
                tokens.append(int(token))
            except ValueError:
                raise ParseError(
                    f"{what} line {lineno}: {token!r} is not an integer"
                ) from None
    return tokens


def parse_three_partition_source(text: str) -> ThreePartitionInstance:
    """3-Partition source file: 3n whitespace-separated positive integers.

    '#' starts a comment. beta is derived as sum/n.
    """
    tokens = _int_tokens(text, "3-partition source")
    if not tokens:
        raise ParseError("3-partition source: no values found")
    return ThreePartitionInstance.from_values(tokens)


def parse_n3dm_source(text: str) -> N3DMInstance:
    """Matching source file: beta, then row a, row b, row c (n each).

    '#' starts a comment; line breaks are not significant, only the
    token count is: 1 + 3n integers.
    """
    tokens = _int_tokens(text, "matching source")
    if not tokens:
        raise ParseError("matching source: no values found")
    beta, rest = tokens[0], tokens[1:]
    if not rest or len(rest) % 3:
        raise ParseError(
            f"matching source: need beta plus 3n values, got {len(tokens)} tokens"
        )
    n = len(rest) // 3
    return N3DMInstance(
        a=tuple(rest[:n]), b=tuple(rest[n : 2 * n]), c=tuple(rest[2 * n :]), beta=beta
    )
