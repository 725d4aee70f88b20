"""End-to-end runs: the three-row verification table, candidate search, reports.

Recomputed relative class numbers flow through an append-only JSONL cache
(one object per line: conductor, factored value, method, timestamp). The
cache only ever accelerates; any consumer that recomputes and disagrees with
a cached line fails hard rather than trusting it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone
from io import StringIO
from pathlib import Path

from .arith import FactoredInteger
from .characters import relative_class_number
from .criteria import Conclusion, CriterionReport, TowerCandidate, verify_candidate
from .errors import CacheMismatchError, FactorizationError

__all__ = [
    "CacheEntry",
    "HminusCache",
    "TableRow",
    "SearchResult",
    "cached_relative_class_number",
    "reproduce_table",
    "search_candidates",
    "emit_report",
    "DEFAULT_CACHE_NAME",
]

DEFAULT_CACHE_NAME = "hminus-cache.jsonl"

# the three conductors whose verification table the CLI reproduces end to end
TABLE_CASES = ((2, 7), (3, 4), (5, 3))


@dataclass(frozen=True)
class CacheEntry:
    conductor: int
    h_minus: FactoredInteger
    computed_at: str
    method: str

    def to_json_line(self) -> str:
        payload = {
            "conductor": self.conductor,
            "h_minus": [list(pair) for pair in self.h_minus.factors],
            "method": self.method,
            "computed_at": self.computed_at,
        }
        return json.dumps(payload, separators=(",", ":"))

    @classmethod
    def from_json_line(cls, line: str) -> "CacheEntry":
        payload = json.loads(line)
        factors = tuple((int(p), int(e)) for p, e in payload["h_minus"])
        value = 1
        for p, e in factors:
            value *= p**e
        return cls(
            int(payload["conductor"]),
            FactoredInteger(value, factors),
            str(payload["computed_at"]),
            str(payload["method"]),
        )


class HminusCache:
    """Append-only JSONL cache of factored relative class numbers.

    Later lines win on re-read. A torn trailing line (an append still in
    flight) is tolerated; any other malformed line is an error.
    """

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)

    def load(self) -> dict[int, CacheEntry]:
        if not self.path.exists():
            return {}
        entries: dict[int, CacheEntry] = {}
        lines = self.path.read_text(encoding="utf-8").splitlines()
        for i, line in enumerate(lines):
            if not line.strip():
                continue
            try:
                entry = CacheEntry.from_json_line(line)
            except (json.JSONDecodeError, KeyError, ValueError):
                if i == len(lines) - 1:
                    continue
                raise ValueError(f"malformed cache line {i + 1} in {self.path}")
            entries[entry.conductor] = entry
        return entries

    def lookup(self, conductor: int) -> CacheEntry | None:
        return self.load().get(conductor)

    def store(self, entry: CacheEntry) -> None:
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(entry.to_json_line() + "\n")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def cached_relative_class_number(
    p: int,
    m: int,
    cache: HminusCache | None = None,
    *,
    verify: bool = False,
    rho_budget: int = 2_000_000,
) -> FactoredInteger:
    """h^- through the cache; verify=True recomputes and cross-checks regardless."""
    conductor = p**m
    entry = cache.lookup(conductor) if cache is not None else None
    if entry is not None and not verify:
        return entry.h_minus
    fresh = relative_class_number(p, m, rho_budget=rho_budget).value
    if entry is not None and entry.h_minus != fresh:
        raise CacheMismatchError(
            f"conductor {conductor}: cached {entry.h_minus.value} = {entry.h_minus}, "
            f"recomputed {fresh.value} = {fresh}"
        )
    if entry is None and cache is not None:
        cache.store(CacheEntry(conductor, fresh, _now(), "product-formula"))
    return fresh


@dataclass(frozen=True)
class TableRow:
    """One verification row, flattened for serialization."""

    p: int
    conductor: int
    h: int
    f: int
    cond_i: bool
    margin_i: int
    cond_ii: bool
    bound_ii: int
    conclusion: str

    @classmethod
    def from_report(cls, report: CriterionReport) -> "TableRow":
        c = report.candidate
        return cls(
            p=c.p,
            conductor=c.p**c.m,
            h=c.h,
            f=c.f,
            cond_i=report.cond_i.holds,
            margin_i=report.cond_i.margin,
            cond_ii=report.cond_ii.holds,
            bound_ii=report.cond_ii.bound,
            conclusion=report.conclusion.value,
        )

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "conductor": self.conductor,
            "h": self.h,
            "f": self.f,
            "cond_I": self.cond_i,
            "margin_I": self.margin_i,
            "cond_II": self.cond_ii,
            "bound_II": self.bound_ii,
            "conclusion": self.conclusion,
        }


def reproduce_table(cache: HminusCache | None = None) -> list[TableRow]:
    """Recompute the three verification rows from scratch.

    For each conductor the relative class number is recomputed, its largest
    prime factor is taken as the extension degree h (the factor that clears
    the degree bound most easily), and both conditions are evaluated. Cached
    values, if present, are cross-checked and any disagreement is fatal.
    """
    rows = []
    for p, m in TABLE_CASES:
        h_minus = cached_relative_class_number(p, m, cache, verify=True)
        h = max(h_minus.primes)
        candidate = TowerCandidate.build(p, m, h, h_minus)
        rows.append(TableRow.from_report(verify_candidate(candidate)))
    return rows


_CONCLUSION_RANK = {
    Conclusion.BOTH.value: 0,
    Conclusion.ONLY_I.value: 1,
    Conclusion.ONLY_II.value: 2,
    Conclusion.FAIL.value: 3,
}


@dataclass(frozen=True)
class SearchResult:
    reports: tuple[CriterionReport, ...]
    skipped: tuple[tuple[int, str], ...]
    budget_exceeded: bool


def search_candidates(
    p: int,
    m_from: int,
    m_to: int,
    *,
    conductor_budget: int = 2048,
    rho_budget: int = 2_000_000,
    cache: HminusCache | None = None,
) -> SearchResult:
    """Sweep conductors p^m, m_from <= m <= m_to, and rank every prime degree.

    Conductors over budget and factorizations that exhaust their iteration
    budget are flagged and skipped; the remaining reports are sorted best
    first (conclusion rank, then condition-I margin descending).
    """
    reports: list[CriterionReport] = []
    skipped: list[tuple[int, str]] = []
    budget_exceeded = False
    for m in range(m_from, m_to + 1):
        conductor = p**m
        if conductor > conductor_budget:
            skipped.append((conductor, f"conductor budget {conductor_budget} exceeded"))
            budget_exceeded = True
            continue
        if conductor <= 2:
            continue  # h^- = 1, no candidate degrees
        try:
            h_minus = cached_relative_class_number(p, m, cache, rho_budget=rho_budget)
        except FactorizationError as exc:
            skipped.append((conductor, f"factorization budget exhausted: {exc}"))
            budget_exceeded = True
            continue
        for h in h_minus.primes:
            if h == p:
                skipped.append((conductor, f"degree {h} equals the ramified prime"))
                continue
            candidate = TowerCandidate.build(p, m, h, h_minus)
            reports.append(verify_candidate(candidate))
    reports.sort(key=lambda r: (_CONCLUSION_RANK[r.conclusion.value], -r.cond_i.margin))
    return SearchResult(tuple(reports), tuple(skipped), budget_exceeded)


_COLUMNS = ("p", "conductor", "h", "f", "cond_I", "margin_I", "cond_II", "bound_II", "conclusion")


def _cell(value) -> str:
    if isinstance(value, bool):
        return "pass" if value else "fail"
    return str(value)


def emit_report(rows: list[TableRow], fmt: str) -> str:
    """Serialize rows deterministically; fmt is one of json, csv, text.

    Field order is fixed and no timestamps enter the payload, so identical
    rows always produce identical bytes.
    """
    if fmt == "json":
        return json.dumps([row.as_dict() for row in rows], indent=2)
    if fmt == "csv":
        out = StringIO()
        out.write(",".join(_COLUMNS) + "\n")
        for row in rows:
            out.write(",".join(_cell(v) for v in row.as_dict().values()) + "\n")
        return out.getvalue()
    if fmt == "text":
        table = [_COLUMNS] + [tuple(_cell(v) for v in row.as_dict().values()) for row in rows]
        widths = [max(len(line[i]) for line in table) for i in range(len(_COLUMNS))]
        lines = ["  ".join(cell.rjust(w) for cell, w in zip(line, widths)) for line in table]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format: {fmt!r}")
