"""Batch runs over prime ranges, bound checks and summary statistics."""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

from .constructors import (
    PRNG_ID,
    Algorithm,
    fop_complete,
    make_lex_order,
    random_complete,
)
from .field import is_prime
from .geometry import PlaneParams

CSV_HEADER = ("q", "algorithm", "trial", "seed", "size", "elapsed_ms", "ratio")
SURVEY_ALGORITHMS = (Algorithm.RANDOM, Algorithm.FOP_LEX, Algorithm.FOP_SINGER)
REGION_R = (3, 46337)
# the table's own sizes at q = 3 and 5 already exceed 1.83 sqrt(q ln q)
DEFAULT_BOUND_EXCLUDE = (3, 5)


class SurveyError(RuntimeError):
    pass


def primes_in_range(lo: int, hi: int) -> list[int]:
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    if lo < 2:
        raise ValueError("lower end must be >= 2")
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(hi) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return [int(p) for p in np.flatnonzero(sieve[lo:]) + lo]


def sqrt_q_ln_q(q: int) -> float:
    return math.sqrt(q * math.log(q))


def ratio(q: int, size: int) -> float:
    return size / sqrt_q_ln_q(q)


# --- bounds --------------------------------------------------------------


@dataclass(frozen=True)
class BoundSpec:
    """The curve ``D * sqrt(q) * (ln q)**C``."""

    name: str
    C: float
    D: float

    def __call__(self, q: float) -> float:
        return self.D * math.sqrt(q) * math.log(q) ** self.C


MAIN = BoundSpec("MAIN", 0.5, 1.83)
FISHER = BoundSpec("FISHER", 0.5, math.sqrt(3.0))
C075 = BoundSpec("C075", 0.75, 1.0)
C073 = BoundSpec("C073", 0.73, 1.0)
C07295 = BoundSpec("C07295", 0.7295, 1.0)
# only the shape of the asymptotic bound; its constant D is not known
KV = BoundSpec("KV", 300.0, 1.0)
BOUNDS = {b.name: b for b in (MAIN, FISHER, C075, C073, C07295, KV)}


def bound_margin(spec: BoundSpec, q: int, size: int) -> float:
    """``size - spec(q)``; negative means the bound holds."""
    if q < 3:
        raise ValueError("bounds are defined for q >= 3")
    return size - spec(q)


# --- records -------------------------------------------------------------


@dataclass(frozen=True)
class TrialRecord:
    q: int
    algorithm: str
    trial: int
    seed: Optional[int]
    size: int
    elapsed_ms: float
    ratio: float
    points: tuple[int, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_result(cls, res, trial: int) -> "TrialRecord":
        return cls(
            q=res.q,
            algorithm=str(res.algorithm),
            trial=trial,
            seed=res.seed,
            size=res.size,
            elapsed_ms=res.elapsed * 1000.0,
            ratio=ratio(res.q, res.size),
            points=res.points,
        )


@dataclass
class ExperimentConfig:
    q_values: list[int]
    trials: int = 1
    algorithms: Sequence[Algorithm] = (Algorithm.RANDOM,)
    base_seed: int = 0
    workers: int = 1

    def __post_init__(self):
        self.q_values = sorted(set(int(q) for q in self.q_values))
        self.algorithms = tuple(Algorithm(a) for a in self.algorithms)
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        for q in self.q_values:
            if not is_prime(q):
                raise ValueError(f"{q} is not prime")
        for a in self.algorithms:
            if a not in SURVEY_ALGORITHMS:
                raise ValueError(f"algorithm {a} cannot be surveyed")
        if not 0 <= self.base_seed < 2**64:
            raise ValueError("base_seed must fit in 64 bits")

    @classmethod
    def for_range(cls, lo: int, hi: int, **kw) -> "ExperimentConfig":
        return cls(q_values=primes_in_range(lo, hi), **kw)

    def to_json(self) -> dict:
        return {
            "q_values": list(self.q_values),
            "trials": self.trials,
            "algorithms": [str(a) for a in self.algorithms],
            "base_seed": self.base_seed,
        }


def trial_seed(base_seed: int, q: int, trial: int) -> int:
    """64-bit per-trial seed; depends only on (base_seed, q, trial)."""
    ss = np.random.SeedSequence(entropy=base_seed, spawn_key=(q, trial))
    return int(ss.generate_state(1, np.uint64)[0])


def _run_item(item) -> list[TrialRecord]:
    q, algo, trials, base_seed = item
    plane = PlaneParams(q)
    if algo == Algorithm.RANDOM:
        out = []
        for t in range(trials):
            seed = trial_seed(base_seed, q, t)
            try:
                res = random_complete(plane, seed)
            except Exception as exc:
                raise SurveyError(f"trial failed: q={q} seed={seed}: {exc}") from exc
            out.append(TrialRecord.from_result(res, t))
        return out
    try:
        if algo == Algorithm.FOP_LEX:
            res = fop_complete(plane, make_lex_order(plane))
        else:
            from .singer import singer_point_order

            res = fop_complete(plane, singer_point_order(plane).as_point_order())
    except Exception as exc:
        raise SurveyError(f"trial failed: q={q} algorithm={algo}: {exc}") from exc
    # fixed-order runs are deterministic; every trial repeats the same arc
    return [TrialRecord.from_result(res, t) for t in range(trials)]


def run_survey(cfg: ExperimentConfig) -> list[TrialRecord]:
    algo_rank = {a: i for i, a in enumerate(SURVEY_ALGORITHMS)}
    items = [(q, a, cfg.trials, cfg.base_seed) for q in cfg.q_values for a in cfg.algorithms]
    # big planes first so the pool stays busy at the end
    items.sort(key=lambda it: -it[0])
    if cfg.workers == 1 or len(items) <= 1:
        chunks = [_run_item(it) for it in items]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_run_item, items))
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=lambda r: (r.q, algo_rank[Algorithm(r.algorithm)], r.trial))
    return records


# --- statistics ----------------------------------------------------------


@dataclass(frozen=True)
class RatioSummary:
    mean: float
    min: float
    max: float
    count: int


def ratio_stats(records: Iterable[TrialRecord], q_lo: int, q_hi: int, algorithm=None) -> RatioSummary:
    vals = [
        r.ratio
        for r in records
        if q_lo <= r.q <= q_hi and (algorithm is None or r.algorithm == str(algorithm))
    ]
    if not vals:
        raise ValueError(f"no records with q in [{q_lo}, {q_hi}]")
    return RatioSummary(math.fsum(vals) / len(vals), min(vals), max(vals), len(vals))


def bound_violations(records, spec: BoundSpec = MAIN, exclude=DEFAULT_BOUND_EXCLUDE) -> list[dict]:
    out = []
    for r in records:
        if r.q in exclude:
            continue
        margin = bound_margin(spec, r.q, r.size)
        if margin >= 0:
            out.append(
                {"q": r.q, "algorithm": r.algorithm, "trial": r.trial, "size": r.size,
                 "bound": spec(r.q), "margin": margin}
            )
    return out


def per_q_summary(records) -> list[dict]:
    groups: dict[tuple[int, str], list[int]] = {}
    for r in records:
        groups.setdefault((r.q, r.algorithm), []).append(r.size)
    algo_rank = {str(a): i for i, a in enumerate(SURVEY_ALGORITHMS)}
    out = []
    for (q, a), sizes in sorted(groups.items(), key=lambda kv: (kv[0][0], algo_rank.get(kv[0][1], 99))):
        out.append({"q": q, "algorithm": a, "min": min(sizes), "mean": sum(sizes) / len(sizes), "max": max(sizes)})
    return out


def summarize(records, cfg: Optional[ExperimentConfig] = None, spec: BoundSpec = MAIN) -> dict:
    return {
        "config": cfg.to_json() if cfg is not None else {},
        "per_q": per_q_summary(records),
        "bound_violations": bound_violations(records, spec),
        "prng_id": PRNG_ID,
    }


# --- reference data ------------------------------------------------------


@dataclass(frozen=True)
class ReferenceTable:
    rows: tuple[tuple[int, int], ...]

    def sizes_for(self, q: int) -> list[int]:
        return [s for qq, s in self.rows if qq == q]

    @property
    def q_values(self) -> list[int]:
        return sorted({q for q, _ in self.rows})

    @classmethod
    def from_records(cls, records, algorithm=None) -> "ReferenceTable":
        return cls(tuple((r.q, r.size) for r in records if algorithm is None or r.algorithm == str(algorithm)))

    def validate(self, q_range=REGION_R) -> None:
        lo, hi = q_range
        for q, s in self.rows:
            if not (is_prime(q) and lo <= q <= hi):
                raise ValueError(f"reference q={q} is not a prime in [{lo}, {hi}]")
            if not 4 <= s <= q + 1:
                raise ValueError(f"reference size {s} out of range for q={q}")


def parse_reference(text: str) -> ReferenceTable:
    rows = []
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    reader = csv.reader(lines)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["q", "size"]:
        raise ValueError(f"reference table must start with header 'q,size', got {header!r}")
    for lineno, row in enumerate(reader, start=2):
        if len(row) != 2:
            raise ValueError(f"reference row {lineno}: expected 2 fields, got {row!r}")
        rows.append((int(row[0]), int(row[1])))
    return ReferenceTable(tuple(rows))


def load_reference(path=None) -> ReferenceTable:
    """Read a ``q,size`` table; without a path, the bundled random-arc table."""
    if path is None:
        text = resources.files("pgarcs").joinpath("data/table1.csv").read_text()
        table = parse_reference(text)
        table.validate()
        return table
    return parse_reference(Path(path).read_text())


def compare_to_reference(records, ref: ReferenceTable):
    """Percentage gaps ``(ref - ours) / ref * 100`` against every matching reference row.

    Returns ``(pairs, skipped)`` where ``skipped`` lists q values with no
    reference entry.
    """
    pairs: list[tuple[int, float]] = []
    skipped: list[int] = []
    index: dict[int, list[int]] = {}
    for q, s in ref.rows:
        index.setdefault(q, []).append(s)
    for r in records:
        refs = index.get(r.q)
        if not refs:
            skipped.append(r.q)
            continue
        for s in refs:
            pairs.append((r.q, (s - r.size) / s * 100.0))
    return pairs, skipped


# --- output --------------------------------------------------------------


def records_csv(records, include_timing: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([
            r.q,
            r.algorithm,
            r.trial,
            "" if r.seed is None else r.seed,
            r.size,
            f"{r.elapsed_ms:.3f}" if include_timing else "",
            repr(r.ratio),
        ])
    return buf.getvalue()


def plot_data(records, algorithm) -> str:
    rows = sorted((r for r in records if r.algorithm == str(algorithm)), key=lambda r: (r.q, r.trial))
    return "".join(f"{r.q} {r.ratio!r}\n" for r in rows)


def emit_outputs(records, summary: dict, out_dir, include_timing: bool = False) -> list[Path]:
    """Write ``trials.csv``, ``summary.json`` and one ``plot_<ALG>.dat`` per algorithm."""
    out = Path(out_dir)
    written = []
    try:
        out.mkdir(parents=True, exist_ok=True)
        p = out / "trials.csv"
        p.write_text(records_csv(records, include_timing))
        written.append(p)
        p = out / "summary.json"
        p.write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
        written.append(p)
        for algo in sorted({r.algorithm for r in records}):
            p = out / f"plot_{algo}.dat"
            p.write_text(plot_data(records, algo))
            written.append(p)
    except OSError as exc:
        raise SurveyError(f"cannot write outputs under {out}: {exc}") from exc
    return written
