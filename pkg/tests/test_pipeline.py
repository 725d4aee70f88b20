"""Cache, table reproduction, candidate search, and report serialization."""

import json

import pytest

from towerforge.arith import FactoredInteger, factorize
from towerforge.criteria import Conclusion
from towerforge.errors import CacheMismatchError
from towerforge.pipeline import (
    CacheEntry,
    HminusCache,
    TableRow,
    cached_relative_class_number,
    emit_report,
    reproduce_table,
    search_candidates,
)


@pytest.fixture
def cache(tmp_path):
    return HminusCache(tmp_path / "cache.jsonl")


class TestCache:
    def test_round_trip(self, cache):
        entry = CacheEntry(128, factorize(359057), "2026-01-01T00:00:00+00:00", "product-formula")
        cache.store(entry)
        assert cache.lookup(128) == entry

    def test_later_lines_win(self, cache):
        old = CacheEntry(81, factorize(2593), "t0", "product-formula")
        new = CacheEntry(81, factorize(2593), "t1", "product-formula")
        cache.store(old)
        cache.store(new)
        assert cache.lookup(81).computed_at == "t1"

    def test_missing_file(self, cache):
        assert cache.lookup(128) is None

    def test_torn_trailing_line_tolerated(self, cache):
        cache.store(CacheEntry(128, factorize(359057), "t", "product-formula"))
        with cache.path.open("a") as handle:
            handle.write('{"conductor": 81, "h_minus": [[25')
        assert cache.lookup(128) is not None
        assert cache.lookup(81) is None

    def test_malformed_interior_line_raises(self, cache):
        cache.path.write_text('not json\n{"conductor": 1}\n')
        with pytest.raises(ValueError):
            cache.load()

    def test_accelerator_path(self, cache):
        value = cached_relative_class_number(2, 7, cache)
        assert value.value == 359057
        assert cache.lookup(128).h_minus == value
        # a second call is served from the cache (same object content)
        assert cached_relative_class_number(2, 7, cache) == value

    def test_poisoned_cache_detected_in_verify_mode(self, cache):
        poisoned = FactoredInteger(359063, ((359063, 1),))
        cache.store(CacheEntry(128, poisoned, "t", "product-formula"))
        # accelerator mode trusts the cache by design
        assert cached_relative_class_number(2, 7, cache).value == 359063
        with pytest.raises(CacheMismatchError):
            cached_relative_class_number(2, 7, cache, verify=True)


class TestReproduceTable:
    def test_rows(self):
        rows = reproduce_table()
        assert [(r.p, r.conductor, r.h, r.f) for r in rows] == [
            (2, 128, 21121, 10560),
            (3, 81, 2593, 648),
            (5, 125, 20602801, 10301400),
        ]
        assert all(r.conclusion == Conclusion.BOTH.value for r in rows)
        assert [r.bound_ii for r in rows] == [260, 328, 1004]

    def test_deterministic_and_idempotent(self, cache):
        first = reproduce_table(cache)
        second = reproduce_table(cache)
        assert first == second == reproduce_table()

    def test_cache_mismatch_is_fatal(self, cache):
        poisoned = FactoredInteger(17, ((17, 1),))
        cache.store(CacheEntry(128, poisoned, "t", "product-formula"))
        with pytest.raises(CacheMismatchError):
            reproduce_table(cache)


class TestSearch:
    def test_conductor_128_contains_pass_and_fail(self):
        result = search_candidates(2, 7, 7)
        by_h = {r.candidate.h: r for r in result.reports}
        assert set(by_h) == {17, 21121}
        assert by_h[21121].conclusion is Conclusion.BOTH
        assert by_h[17].conclusion is Conclusion.FAIL
        # f(2 mod 17) = 8: condition I margin 8^2 - 32 - 2*17*64 < 0, bound 260 unmet
        assert by_h[17].candidate.f == 8
        assert by_h[17].cond_i.margin == 64 - 32 - 2176
        assert not result.budget_exceeded
        # the passing row sorts first
        assert result.reports[0].candidate.h == 21121

    def test_trivial_ranges_empty(self):
        assert search_candidates(3, 1, 2).reports == ()
        assert search_candidates(2, 1, 2).reports == ()

    def test_budget_flagged(self):
        result = search_candidates(2, 7, 12, conductor_budget=128)
        assert result.budget_exceeded
        assert [c for c, _ in result.skipped] == [256, 512, 1024, 2048, 4096]
        assert {r.candidate.h for r in result.reports} == {17, 21121}

    def test_uses_cache(self, cache):
        search_candidates(2, 7, 7, cache=cache)
        assert cache.lookup(128) is not None

    def test_table_conductors_pass_exactly_the_winning_degrees(self):
        expected = {(2, 7): {21121}, (3, 4): {2593}, (5, 3): {20602801}}
        for (p, m), winners in expected.items():
            result = search_candidates(p, m, m)
            passes = {
                r.candidate.h
                for r in result.reports
                if r.conclusion is Conclusion.BOTH
            }
            assert passes == winners
        # the conductor-125 cofactor clears only the degree bound
        result = search_candidates(5, 3, 3)
        by_h = {r.candidate.h: r.conclusion for r in result.reports}
        assert by_h[2801] is Conclusion.ONLY_II


ROWS = [
    TableRow(2, 128, 21121, 10560, True, 108767872, True, 260, "both-branches-pass"),
    TableRow(3, 81, 2593, 648, True, 137268, True, 328, "both-branches-pass"),
]

GOLDEN_CSV = (
    "p,conductor,h,f,cond_I,margin_I,cond_II,bound_II,conclusion\n"
    "2,128,21121,10560,pass,108767872,pass,260,both-branches-pass\n"
    "3,81,2593,648,pass,137268,pass,328,both-branches-pass\n"
)

GOLDEN_TEXT = (
    "p  conductor      h      f  cond_I   margin_I  cond_II  bound_II          conclusion\n"
    "2        128  21121  10560    pass  108767872     pass       260  both-branches-pass\n"
    "3         81   2593    648    pass     137268     pass       328  both-branches-pass\n"
)


class TestEmitReport:
    def test_empty_json(self):
        assert emit_report([], "json") == "[]"

    def test_json_round_trip(self):
        payload = json.loads(emit_report(ROWS, "json"))
        assert payload[0]["h"] == 21121
        assert payload[0]["cond_I"] is True
        assert list(payload[0].keys()) == [
            "p",
            "conductor",
            "h",
            "f",
            "cond_I",
            "margin_I",
            "cond_II",
            "bound_II",
            "conclusion",
        ]

    def test_csv_golden(self):
        assert emit_report(ROWS, "csv") == GOLDEN_CSV

    def test_text_golden(self):
        assert emit_report(ROWS, "text") == GOLDEN_TEXT

    def test_deterministic_bytes(self):
        for fmt in ("json", "csv", "text"):
            assert emit_report(ROWS, fmt) == emit_report(ROWS, fmt)

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_report(ROWS, "yaml")

    def test_row_from_report_consistency(self):
        result = search_candidates(2, 7, 7)
        row = TableRow.from_report(result.reports[0])
        assert row.h == result.reports[0].candidate.h
        assert row.conclusion == result.reports[0].conclusion.value
