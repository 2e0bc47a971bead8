"""End-to-end analysis, identity suites, and resumable parameter sweeps."""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import os
import random
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator

from .conjecture import MAX_SCAN_POINTS, Verdict, predicted_dimension, scan_quadrics
from .core import (
    DivisorClass,
    LinearSystem,
    additivity_defect,
    rr_virtual_dimension,
    virtual_dimension,
)
from .cremona import cremona_raw, vir_change_rhs
from .gamma import classify_gamma_graph, gamma_cycle
from .oracle import DEFAULT_PRIME, DEFAULT_SEED, DEFAULT_TRIALS, OracleResult, oracle_dimension

log = logging.getLogger(__name__)

SCHEMA = "fatpoints.sweep/1"


class SpecSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, msg: str) -> None:
        self.text, self.pos = text, pos
        super().__init__(f"{msg} at position {pos}: {text!r}")


_TOKEN = re.compile(r"\s*(?:(-?\d+)(?:\^(\d+))?)\s*(?:,|$|(?=\s))")


def parse_system_spec(text: str) -> LinearSystem:
    """Parse ``"4 2^9"`` (degree, then multiplicities with ``k^j`` shorthand)."""
    values: list[int] = []
    degree_seen = False
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace() or text[pos] == ",":
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise SpecSyntaxError(text, pos, "expected an integer or k^j")
        base, exp = int(m.group(1)), m.group(2)
        if exp is not None:
            if not degree_seen:
                raise SpecSyntaxError(text, pos, "the degree cannot carry an exponent")
            values.extend([base] * int(exp))
        else:
            values.append(base)
        degree_seen = True
        pos = m.end()
    if not degree_seen:
        raise SpecSyntaxError(text, 0, "empty system spec")
    return LinearSystem(values[0], tuple(values[1:]))


@dataclass
class AnalysisReport:
    system: LinearSystem
    verdict: Verdict
    obstructions: list
    oracle: OracleResult | None = None

    @property
    def agree(self) -> bool | None:
        if self.oracle is None:
            return None
        return self.verdict.predicted_dimension == self.oracle.dimension

    def to_record(self) -> dict:
        S = self.verdict.standard
        return {
            "schema": SCHEMA,
            "d": self.system.degree,
            "mults": list(self.system.mults),
            "standard_d": S.degree,
            "standard_mults": list(S.mults),
            "trace": self.verdict.standard_trace.to_list(),
            "gamma": [list(t) for t in gamma_cycle(S).as_tuples()],
            "shape": classify_gamma_graph(S).to_dict(),
            "obstructions": [{"subset": list(o.subset), "value": o.value} for o in self.obstructions],
            "special": self.verdict.special,
            "reasons": [r.to_dict() for r in self.verdict.reasons],
            "predicted": self.verdict.predicted_dimension,
            "oracle": self.oracle.to_dict() if self.oracle else None,
            "agree": self.agree,
        }

    def render(self) -> str:
        v = self.verdict
        S = v.standard
        lines = [f"system      {self.system}", f"virtual     {virtual_dimension(self.system)}"]
        if v.standard_trace.empty:
            lines.append(f"standard    empty (reached {S})")
        else:
            lines.append(f"standard    {S}   ({len(v.standard_trace.steps)} steps)")
        for st in v.standard_trace.steps:
            extra = f" k={st.k}" if st.k is not None else ""
            idx = " ".join(str(i + 1) for i in st.indices)
            lines.append(f"  - {st.kind.value}{' at ' + idx if idx else ''}{extra}")
        cyc = gamma_cycle(S)
        if cyc:
            lines.append("gamma       " + ", ".join(f"{e.t}*l({e.i + 1},{e.j + 1})" for e in cyc.edges))
        lines.append(f"shape       {classify_gamma_graph(S).kind}")
        for o in self.obstructions:
            lines.append(f"quadric     points {[i + 1 for i in o.subset]}  Q(L-Q)(L-K) = {o.value}")
        if v.peeled_quadrics:
            lines.append(f"peeled      {len(v.peeled_quadrics)} quadric(s), residual {v.residual}")
        lines.append(f"special     {'yes' if v.special else 'no'}")
        lines.append(f"predicted   {v.predicted_dimension}")
        if self.oracle is not None:
            o = self.oracle
            lines.append(
                f"oracle      {o.dimension}  (p={o.prime}, seed={o.seed}, coranks={list(o.coranks)})"
            )
            lines.append(f"agree       {'yes' if self.agree else 'NO'}")
        return "\n".join(lines)


def analyze(
    L: LinearSystem,
    *,
    run_oracle: bool = True,
    prime: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    max_points: int = MAX_SCAN_POINTS,
) -> AnalysisReport:
    verdict = predicted_dimension(L, max_points)
    S = verdict.standard
    obstructions = [] if verdict.standard_trace.empty else scan_quadrics(S, max_points)
    oracle = oracle_dimension(L, trials, seed, prime) if run_oracle else None
    return AnalysisReport(L, verdict, obstructions, oracle)


# -- identity suites ---------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    count: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _random_system(rng: random.Random, max_d: int, max_m: int, max_r: int) -> LinearSystem:
    r = rng.randint(0, max_r)
    return LinearSystem(rng.randint(0, max_d), tuple(rng.randint(0, max_m) for _ in range(r)))


def check_rr(count: int, rng: random.Random) -> SuiteResult:
    res = SuiteResult("virtual dimension == Riemann-Roch form", count)
    for _ in range(count):
        L = _random_system(rng, 20, 10, 12)
        if virtual_dimension(L) != rr_virtual_dimension(L):
            res.failures.append(str(L))
    return res


def random_splitting(rng: random.Random, L: LinearSystem) -> tuple[DivisorClass, DivisorClass]:
    a = rng.randint(0, L.degree)
    f = tuple(rng.randint(0, m) for m in L.mults)
    F = DivisorClass(a, f)
    return F, L.to_class() - F


def check_additivity(count: int, rng: random.Random) -> SuiteResult:
    res = SuiteResult("v(L) = v(F) + v(M) + F.M.(L-K)/2", count)
    for _ in range(count):
        L = _random_system(rng, 20, 10, 12)
        F, M = random_splitting(rng, L)
        try:
            ok = virtual_dimension(L) == (
                virtual_dimension(F.to_system())
                + virtual_dimension(M.to_system())
                + additivity_defect(F, M)
            )
        except ArithmeticError:
            ok = False
        if not ok:
            res.failures.append(f"{L} = {F.to_system()} + {M.to_system()}")
    return res


def random_vir_change_system(rng: random.Random) -> LinearSystem:
    """A random system whose first four points satisfy 2d >= every triple sum."""
    while True:
        d = rng.randint(0, 20)
        r = rng.randint(4, 10)
        m = [rng.randint(0, d + 1) for _ in range(r)]
        if all(2 * d >= sum(t) for t in itertools.combinations(m[:4], 3)):
            return LinearSystem(d, tuple(m))


def check_vir_change(count: int, rng: random.Random) -> SuiteResult:
    res = SuiteResult("v(Cr L) - v(L) = sum over t_ij", count)
    for _ in range(count):
        L = random_vir_change_system(rng)
        lhs = virtual_dimension(cremona_raw(L)) - virtual_dimension(L)
        if lhs != vir_change_rhs(L):
            res.failures.append(str(L))
    return res


def verify_identities(
    rr_count: int = 1000, split_count: int = 500, vir_count: int = 500, seed: int = 1
) -> list[SuiteResult]:
    rng = random.Random(seed)
    return [
        check_rr(rr_count, rng),
        check_additivity(split_count, rng),
        check_vir_change(vir_count, rng),
    ]


# -- sweeps ------------------------------------------------------------------


@dataclass(frozen=True)
class SweepConfig:
    max_degree: int = 10
    max_mult: int = 5
    max_points: int = 10
    prime: int = DEFAULT_PRIME
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "max_degree": self.max_degree,
            "max_mult": self.max_mult,
            "max_points": self.max_points,
            "prime": self.prime,
            "trials": self.trials,
            "seed": self.seed,
        }

    @property
    def hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def enumerate_systems(max_degree: int, max_mult: int, max_points: int) -> Iterator[LinearSystem]:
    """Canonical systems: degree ascending, then point count, then sorted
    multiplicity vectors in lexicographically decreasing order.  Zero
    multiplicities are skipped since they impose nothing."""
    for d in range(max_degree + 1):
        for r in range(max_points + 1):
            for ms in itertools.combinations_with_replacement(range(max_mult, 0, -1), r):
                yield LinearSystem(d, ms)


def sweep_record(L: LinearSystem, config: SweepConfig) -> dict:
    rep = analyze(L, prime=config.prime, trials=config.trials, seed=config.seed)
    rec = {"schema": SCHEMA, "config": config.hash}
    rec.update(rep.to_record())
    rec["timestamp"] = None
    return rec


def dump_record(rec: dict) -> str:
    return json.dumps(rec, separators=(",", ":"), ensure_ascii=False)


def strip_timestamp(line: str) -> str:
    rec = json.loads(line)
    rec.pop("timestamp", None)
    return dump_record(rec)


def _record_key(rec: dict) -> tuple:
    return rec["config"], rec["d"], tuple(rec["mults"])


def _load_existing(path: Path) -> list[dict]:
    """Read complete records, cutting off a torn final line from an interrupted run."""
    if not path.exists():
        return []
    raw = path.read_bytes()
    keep = raw.rfind(b"\n") + 1
    if keep != len(raw):
        log.warning("dropping incomplete trailing record in %s", path)
        with path.open("r+b") as fh:
            fh.truncate(keep)
    records = []
    for line in raw[:keep].decode("utf-8").splitlines():
        if line.strip():
            records.append(json.loads(line))
    return records


@dataclass
class SweepSummary:
    total: int
    agreeing: int
    disagreements: list[dict]
    inconsistent_oracle: list[dict]

    @property
    def rate(self) -> float:
        return self.agreeing / self.total if self.total else 1.0

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "agreeing": self.agreeing,
            "disagreeing": len(self.disagreements),
            "agreement_rate": self.rate,
            "disagreements": [
                {"d": r["d"], "mults": r["mults"], "predicted": r["predicted"], "oracle": r["oracle"]["dim"]}
                for r in self.disagreements
            ],
            "unstable_oracle": [{"d": r["d"], "mults": r["mults"]} for r in self.inconsistent_oracle],
        }


def summarize(records: list[dict]) -> SweepSummary:
    agreeing = [r for r in records if r["agree"]]
    bad = [r for r in records if not r["agree"]]
    unstable = [r for r in records if len(set(r["oracle"]["coranks"])) > 1]
    return SweepSummary(len(records), len(agreeing), bad, unstable)


def _worker(args: tuple[LinearSystem, SweepConfig]) -> dict:
    L, config = args
    return sweep_record(L, config)


def run_sweep(
    config: SweepConfig,
    out: str | os.PathLike,
    *,
    resume: bool = False,
    jobs: int = 1,
    limit: int | None = None,
    clock=None,
) -> SweepSummary:
    """Analyze every canonical system in range and append one JSON line each.

    Records are written in enumeration order whatever ``jobs`` is.  With
    ``resume`` the systems already present for this config are skipped;
    otherwise the output file is started afresh.  ``limit`` caps how many new
    records are written (used to simulate interruption).
    """
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    existing = _load_existing(path) if resume else []
    done = {_record_key(r) for r in existing}
    mine = [r for r in existing if r["config"] == config.hash]
    todo = [
        L
        for L in enumerate_systems(config.max_degree, config.max_mult, config.max_points)
        if (config.hash, L.degree, L.mults) not in done
    ]
    if limit is not None:
        todo = todo[:limit]
    now = clock or (lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    mode = "a" if resume else "w"
    log.info("sweep %s: %d recorded, %d to go", config.hash, len(mine), len(todo))
    with path.open(mode, encoding="utf-8", newline="\n") as fh:
        if jobs > 1:
            from concurrent.futures import ProcessPoolExecutor

            pool = ProcessPoolExecutor(max_workers=jobs)
            lines = pool.map(_worker, [(L, config) for L in todo], chunksize=16)
        else:
            pool = None
            lines = map(_worker, [(L, config) for L in todo])
        try:
            for rec in lines:
                rec["timestamp"] = now()
                fh.write(dump_record(rec) + "\n")
                fh.flush()
                mine.append(rec)
        finally:
            if pool is not None:
                pool.shutdown()
    return summarize(mine)
