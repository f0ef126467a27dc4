import json
from fractions import Fraction

import pytest

from wcatalan.audit import (
    DEFAULT_GRID,
    REGISTRY,
    Grid,
    Status,
    cell_order,
    claim_by_id,
    parse_report,
    render_report,
    run_all,
    run_claim,
)
from wcatalan.errors import DomainError

EXPECTED = {
    "C1": "refuted", "C2": "refuted", "C3": "confirmed", "C4": "refuted", "C5": "confirmed",
    "C6": "refuted", "C7": "confirmed", "C8": "confirmed", "C9": "refuted", "C10": "refuted",
    "C11": "refuted", "C12": "confirmed", "C13": "confirmed",
}


@pytest.fixture(scope="module")
def report():
    return run_all(DEFAULT_GRID, timestamp="2026-01-01T00:00:00+00:00")


def test_registry_shape():
    assert [c.id for c in REGISTRY] == [f"C{i}" for i in range(1, 14)]
    assert all(c.paper_ref for c in REGISTRY)


def test_statuses(report):
    assert report.statuses() == EXPECTED


def test_one_verdict_per_claim(report):
    assert len(report.verdicts) == len(REGISTRY) == 13


@pytest.mark.parametrize("cid,n,a,lhs,rhs", [
    ("C1", 1, 1, "4", "2"),
    ("C2", 1, 1, "4", "2"),
    ("C4", 3, 1, "64", "128"),
    ("C6", 2, 1, "16", "44/3"),
    ("C9", 1, 1, "4", "2"),
    ("C11", 0, 1, "0.125", "0.25"),
])
def test_witnesses(report, cid, n, a, lhs, rhs):
    w = report.verdict(cid).witness
    assert (w.n, w.a, w.lhs, w.rhs) == (n, Fraction(a), lhs, rhs)


def test_witness_minimality(report):
    for v in report.verdicts:
        if v.status is not Status.REFUTED:
            assert v.witness is None
            continue
        claim = claim_by_id(v.claim_id)
        wkey = cell_order((v.witness.n, v.witness.a))
        for cell in claim.select(DEFAULT_GRID):
            if cell_order(cell) < wkey:
                assert claim.check(*cell).ok


def test_c9_side_finding(report):
    v = report.verdict("C9")
    assert v.note == f"the integral equals sum_k C(n,k)^2 a^k on {v.cells_checked}/{v.cells_checked} cells"


def test_c2_c7_examples_on_n_le_40():
    grid = Grid(range(41), [0, 1])
    assert run_claim(claim_by_id("C7"), grid).status is Status.CONFIRMED
    v = run_claim(claim_by_id("C2"), grid)
    assert v.status is Status.REFUTED and (v.witness.n, v.witness.lhs, v.witness.rhs) == (1, "4", "2")


def test_single_claim_registry():
    r = run_all(DEFAULT_GRID, registry=[claim_by_id("C8")])
    assert r.statuses() == {"C8": "confirmed"}


def test_empty_registry_and_grid():
    with pytest.raises(DomainError):
        run_all(DEFAULT_GRID, registry=[])
    with pytest.raises(DomainError):
        run_claim(claim_by_id("C8"), Grid([], [1]))


def test_failing_checker_is_inconclusive():
    from dataclasses import replace

    def boom(n, a):
        raise DomainError("nope")

    v = run_claim(replace(claim_by_id("C8"), check=boom), Grid([1, 2], [1]))
    assert v.status is Status.INCONCLUSIVE and v.witness is None and v.cells_checked == 2


def test_order_and_parallel_invariance(report):
    ts = report.timestamp
    par = run_all(DEFAULT_GRID, max_workers=4, timestamp=ts)
    rev = run_all(DEFAULT_GRID, registry=list(reversed(REGISTRY)), timestamp=ts)
    assert par == report
    assert sorted(rev.verdicts, key=lambda v: int(v.claim_id[1:])) == list(report.verdicts)


def test_json_round_trip_and_schema(report):
    text = render_report(report, "json")
    assert parse_report(text) == report
    data = json.loads(text)
    assert {"version", "grid", "verdicts"} <= set(data)
    for v in data["verdicts"]:
        assert {"id", "status", "witness", "cells"} <= set(v)
        assert v["status"] in {"confirmed", "refuted", "inconclusive"}
        if v["witness"] is not None:
            assert set(v["witness"]) == {"n", "a", "lhs", "rhs"}
            assert isinstance(v["witness"]["n"], int) and isinstance(v["witness"]["a"], str)
    assert render_report(report, "json") == text


def test_markdown_carries_same_content(report):
    md = render_report(report, "markdown")
    data = json.loads(render_report(report, "json"))
    for v in data["verdicts"]:
        row = next(line for line in md.splitlines() if line.startswith(f"| {v['id']} |"))
        assert v["status"] in row and f"| {v['cells']} |" in row
        if v["witness"]:
            w = v["witness"]
            assert f"n={w['n']}, a={w['a']}" in row and w["lhs"] in row and w["rhs"] in row
    c2 = next(line for line in md.splitlines() if line.startswith("| C2 |"))
    assert "n=1" in c2 and "| 4 |" in c2 and "| 2 |" in c2
    assert report.timestamp in md


def test_minimal_report_contains_confirmed():
    r = run_all(Grid([0, 1], [2]), registry=[claim_by_id("C8")])
    text = render_report(r, "json")
    assert '"confirmed"' in text and '"cells": 2' in text


def test_unknown_format(report):
    with pytest.raises(ValueError):
        render_report(report, "yaml")
