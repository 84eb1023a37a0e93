"""Acceptance suite: every criterion runs at its stated tolerance and
prints one pass/fail line per row (run with -s to see them live)."""

import pytest

from ncgraph import suite


def _run(criterion):
    rows = suite.CRITERIA[criterion]()
    for row in rows:
        status = "PASS" if row.ok else "FAIL"
        print(
            f"[{status}] {row.criterion}: {row.name} | expected {row.expected} | "
            f"computed {row.computed} | tol {row.tol} | {row.seconds:.2f} s"
        )
    bad = [r for r in rows if not r.ok]
    assert not bad, f"{len(bad)} row(s) failed: {[r.name for r in bad]}"


def test_01_pentagon():
    _run("pentagon")


def test_02_identity_superdense():
    _run("identity")


def test_03_complete_graph():
    _run("complete")


def test_04_dephasing():
    _run("dephasing")


def test_05_delta_example():
    _run("delta")


def test_06_duan_channel_graph():
    _run("duan")


def test_07_multiplicativity():
    _run("multiplicativity")


def test_08_additivity_union():
    _run("additivity")


def test_09_classical_consistency():
    _run("classical-consistency")


def test_10_bound_chain():
    _run("bound-chain")


def test_11_monotonicity():
    _run("monotonicity")


def test_12_solver_soundness():
    _run("solver")
