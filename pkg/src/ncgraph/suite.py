"""Built-in verification suite: known values and structural identities.

Each criterion produces one or more rows of (expected, computed, tolerance,
pass/fail); the CLI prints them as a table and the acceptance tests assert
them individually.  Seeds and corpus sizes are fixed constants so runs are
reproducible.  Rows over many independent instances fan out across
processes, with BLAS pinned to one thread per worker.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass

import numpy as np

from . import graphs as gmod
from . import independence as ind
from . import lmi, spaces
from . import theta as thetamod
from .linalg import kron, operator_norm


@dataclass(frozen=True)
class SuiteRow:
    criterion: str
    name: str
    expected: str
    computed: str
    tol: str
    ok: bool
    seconds: float

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "tol": self.tol,
            "ok": self.ok,
            "seconds": round(self.seconds, 3),
        }


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _row(criterion, name, expected, computed, tol, ok, t0) -> SuiteRow:
    return SuiteRow(
        criterion, name, expected, computed, tol, bool(ok), time.perf_counter() - t0
    )


# --- worker-side helpers (module level so they pickle) ---------------------

_TP_CTL = None


def _limit_blas_threads():
    global _TP_CTL
    try:
        from threadpoolctl import threadpool_limits

        _TP_CTL = threadpool_limits(limits=1)
    except ImportError:
        pass


def _pmap(fn, items):
    procs = min(os.cpu_count() or 1, max(1, len(items)))
    if procs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    import multiprocessing as mp

    with mp.get_context("fork").Pool(procs, initializer=_limit_blas_threads) as pool:
        return pool.map(fn, items, chunksize=1)


def _consistency_task(payload):
    n, edges = payload
    g = gmod.from_edges(n, edges)
    quantum = thetamod.theta_tilde(gmod.to_operator_space(g)).value
    classical = thetamod.theta_classical(g).value
    return abs(quantum - classical) / (1.0 + classical)


def _mult_task(payload):
    d1, k1, d2, k2, seed = payload
    s1 = spaces.random_nc_graph(d1, k1, seed)
    s2 = spaces.random_nc_graph(d2, k2, seed + 7)
    t1 = thetamod.theta_tilde(s1).value
    t2 = thetamod.theta_tilde(s2).value
    prod_sides = "both" if d1 * d2 <= 6 else "dual"
    tp = thetamod.theta_tilde(spaces.tensor(s1, s2), sides=prod_sides).value
    return abs(tp - t1 * t2) / (1.0 + t1 * t2)


def _union_task(payload):
    d1, k1, d2, k2, seed = payload
    s1 = spaces.random_nc_graph(d1, k1, seed)
    s2 = spaces.random_nc_graph(d2, k2, seed + 13)
    t1 = thetamod.theta_tilde(s1).value
    t2 = thetamod.theta_tilde(s2).value
    t_sum = thetamod.theta_tilde(spaces.direct_sum(s1, s2)).value
    t_max = thetamod.theta_tilde(spaces.complete_union(s1, s2)).value
    return abs(t_sum - (t1 + t2)), abs(t_max - max(t1, t2))


def _mono_task(seed):
    rng = np.random.default_rng(np.uint64(seed))
    k = int(rng.integers(2, 7))
    small = spaces.random_nc_graph(3, k, seed)
    extra = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    big = spaces.span(list(small.basis) + [0.5 * (extra + extra.conj().T)])
    t_small = thetamod.theta_tilde(small).value
    t_big = thetamod.theta_tilde(big).value

    a = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
    q, _ = np.linalg.qr(a)
    induced = spaces.induced_subgraph(small, q)
    t_ind = thetamod.theta_tilde(induced).value
    return t_small - t_big, t_ind - t_small  # want >= -1e-5 and <= 1e-5


# --- example spaces ---------------------------------------------------------


def delta_space(d: int) -> spaces.OperatorSpace:
    """Complement of the span of diag(d-1, -1, ..., -1): a one-dimensional
    complement makes every entanglement-assisted bound collapse to 2 while
    the quantum Lovasz number climbs to d."""
    delta = np.diag([float(d - 1)] + [-1.0] * (d - 1)).astype(np.complex128)
    return spaces.orth_complement(spaces.span([delta]))


def duan_space(d: int = 2) -> spaces.OperatorSpace:
    """span(1_2 (x) 1_d) + (1_2)_perp (x) L(C^d) on a 2d-dimensional system."""
    eye2 = np.eye(2, dtype=np.complex128)
    mats = [kron(eye2, np.eye(d, dtype=np.complex128))]
    for f in spaces.orth_complement(spaces.span([eye2])).basis:
        for g in spaces.full_space(d).basis:
            mats.append(kron(f, g))
    return spaces.span(mats)


def dephasing_space() -> spaces.OperatorSpace:
    return spaces.span([np.eye(2, dtype=np.complex128), np.diag([1.0, -1.0]).astype(np.complex128)])


# --- criteria ---------------------------------------------------------------


def crit_pentagon() -> list[SuiteRow]:
    rows = []
    t0 = time.perf_counter()
    c5 = gmod.cycle(5)
    rt5 = math.sqrt(5.0)
    th = thetamod.theta_classical(c5).value
    rows.append(_row("pentagon", "theta(C5)", _fmt(rt5), _fmt(th), "1e-5", abs(th - rt5) <= 1e-5, t0))
    t0 = time.perf_counter()
    tt = thetamod.theta_tilde(gmod.to_operator_space(c5)).value
    rows.append(
        _row("pentagon", "theta_tilde(S_C5)", _fmt(th), _fmt(tt), "1e-5", abs(tt - th) <= 1e-5, t0)
    )
    t0 = time.perf_counter()
    a1, _ = gmod.alpha_brute(c5)
    a2, _ = gmod.alpha_brute(gmod.strong_product(c5, c5))
    rows.append(_row("pentagon", "alpha(C5)", "2", str(a1), "exact", a1 == 2, t0))
    rows.append(_row("pentagon", "alpha(C5*C5)", "5", str(a2), "exact", a2 == 5, t0))
    total = sum(r.seconds for r in rows)
    rows.append(
        SuiteRow("pentagon", "runtime", "< 5 s", f"{total:.2f} s", "hard", total < 5.0, total)
    )
    return rows


def crit_identity() -> list[SuiteRow]:
    rows = []
    for d in (2, 3):
        t0 = time.perf_counter()
        tt = thetamod.theta_tilde(spaces.identity_space(d)).value
        rows.append(
            _row(
                "identity", f"theta_tilde(C*1_{d})", _fmt(d * d), _fmt(tt), "1e-4",
                abs(tt - d * d) <= 1e-4, t0,
            )
        )
    for d in (1, 2, 3, 4):
        t0 = time.perf_counter()
        t_mat = thetamod.identity_witness(d)
        one = np.eye(d * d)
        norm = operator_norm(one + t_mat)
        psd = float(np.linalg.eigvalsh(one + t_mat)[0])
        # membership in (span{1} (x) L)^perp checked as zero projection on the space
        sp = spaces.tensor(spaces.identity_space(d), spaces.full_space(d))
        resid = float(np.linalg.norm(sp.project(t_mat)))
        ok = abs(norm - d * d) <= 1e-9 and psd >= -1e-9 and resid <= 1e-9 * (1 + d * d)
        rows.append(
            _row(
                "identity", f"witness(d={d})", f"norm {d * d}, PSD, in complement",
                f"norm {_fmt(norm)}, min eig {psd:.1e}, proj {resid:.1e}", "1e-9", ok, t0,
            )
        )
    return rows


def crit_complete() -> list[SuiteRow]:
    rows = []
    for d in (2, 3, 4):
        t0 = time.perf_counter()
        tt = thetamod.theta_tilde(spaces.full_space(d)).value
        rows.append(
            _row("complete", f"theta_tilde(L(C^{d}))", "1", _fmt(tt), "1e-6", abs(tt - 1) <= 1e-6, t0)
        )
    return rows


def crit_dephasing() -> list[SuiteRow]:
    rows = []
    t0 = time.perf_counter()
    s = dephasing_space()
    tt = thetamod.theta_tilde(s).value
    rows.append(_row("dephasing", "theta_tilde(span{1,Z})", "2", _fmt(tt), "1e-5", abs(tt - 2) <= 1e-5, t0))
    t0 = time.perf_counter()
    rep = ind.bounds(s)
    rows.append(
        _row("dephasing", "alpha lower", "2", str(rep.alpha_lower), "exact", rep.alpha_lower == 2, t0)
    )
    return rows


def crit_delta() -> list[SuiteRow]:
    rows = []
    for d in (3, 4):
        t0 = time.perf_counter()
        s = delta_space(d)
        tt = thetamod.theta_tilde(s).value
        rows.append(
            _row("delta", f"theta_tilde(Delta_perp d={d})", _fmt(d), _fmt(tt), "1e-4", abs(tt - d) <= 1e-4, t0)
        )
        t0 = time.perf_counter()
        hat = ind.alpha_hat_upper(s)
        pair = ind.pair_dim_upper(s)
        rows.append(
            _row(
                "delta", f"bounds d={d}", "alpha_hat 2, pair 1", f"alpha_hat {hat}, pair {pair}",
                "exact", hat == 2 and pair == 1, t0,
            )
        )
    return rows


def crit_duan() -> list[SuiteRow]:
    t0 = time.perf_counter()
    tt = thetamod.theta_tilde(duan_space(2)).value
    dt = time.perf_counter() - t0
    ok = abs(tt - 4.0) <= 1e-3 and dt < 60.0
    return [
        SuiteRow("duan", "theta_tilde(S_Duan d=2)", "4", _fmt(tt), "1e-3, < 60 s", ok, dt)
    ]


MULT_PAIRS = (
    [(2, 1 + i % 4, 2, 1 + (i + 1) % 4, 100 + i) for i in range(8)]
    + [(2, 1 + i % 4, 3, 1 + i % 7, 200 + i) for i in range(6)]
    + [(3, 2 + i % 3, 3, 2 + (i + 1) % 4, 300 + i) for i in range(6)]
)


def crit_multiplicativity() -> list[SuiteRow]:
    t0 = time.perf_counter()
    devs = _pmap(_mult_task, MULT_PAIRS)
    worst = max(devs)
    return [
        _row(
            "multiplicativity", f"{len(MULT_PAIRS)} random pairs", "rel dev <= 1e-3",
            f"max rel dev {worst:.2e}", "1e-3", worst <= 1e-3, t0,
        )
    ]


UNION_PAIRS = (
    [(2, 1 + i % 4, 2, 1 + (i + 1) % 4, 400 + i) for i in range(12)]
    + [(2, 1 + i % 4, 3, 1 + i % 8, 500 + i) for i in range(5)]
    + [(3, 2 + i, 3, 3 + i, 600 + i) for i in range(3)]
)


def crit_additivity() -> list[SuiteRow]:
    rows = []
    t0 = time.perf_counter()
    devs = _pmap(_union_task, UNION_PAIRS)
    worst_sum = max(d[0] for d in devs)
    worst_max = max(d[1] for d in devs)
    rows.append(
        _row(
            "additivity", f"theta_tilde over {len(UNION_PAIRS)} pairs",
            "dsum additive, cunion max", f"devs {worst_sum:.2e}, {worst_max:.2e}", "1e-4",
            worst_sum <= 1e-4 and worst_max <= 1e-4, t0,
        )
    )
    t0 = time.perf_counter()
    worst = 0.0
    for i in range(20):
        g1 = gmod.erdos_renyi(2 + i % 2, 0.5, 700 + i)
        g2 = gmod.erdos_renyi(2 + (i + 1) % 2, 0.5, 800 + i)
        t1 = thetamod.theta_classical(g1).value
        t2 = thetamod.theta_classical(g2).value
        ts = thetamod.theta_classical(gmod.disjoint_union(g1, g2)).value
        tj = thetamod.theta_classical(gmod.join(g1, g2)).value
        worst = max(worst, abs(ts - t1 - t2), abs(tj - max(t1, t2)))
    rows.append(
        _row(
            "additivity", "classical theta over 20 pairs", "dsum additive, join max",
            f"max dev {worst:.2e}", "1e-4", worst <= 1e-4, t0,
        )
    )
    return rows


def crit_classical_consistency() -> list[SuiteRow]:
    t0 = time.perf_counter()
    all_graphs = []
    for n in range(1, 7):
        all_graphs.extend(gmod.nonisomorphic_graphs(n))
    n6 = len(gmod.nonisomorphic_graphs(6))
    payloads = [(g.n, g.edges) for g in all_graphs]
    devs = _pmap(_consistency_task, payloads)
    worst = max(devs)
    dt = time.perf_counter() - t0
    ok = worst <= 1e-5 and n6 == 156 and dt < 600.0
    return [
        SuiteRow(
            "classical-consistency", f"{len(all_graphs)} graphs (156 at n=6)",
            "rel dev <= 1e-5, < 10 min", f"max rel dev {worst:.2e} in {dt:.0f} s", "1e-5",
            ok, dt,
        )
    ]


def crit_bound_chain() -> list[SuiteRow]:
    rows = []
    t0 = time.perf_counter()
    corpus = [
        gmod.to_operator_space(gmod.cycle(5)),
        dephasing_space(),
        spaces.identity_space(2),
        spaces.identity_space(3),
        spaces.full_space(2),
        spaces.full_space(3),
        delta_space(3),
        delta_space(4),
        duan_space(2),
    ] + [spaces.random_nc_graph(3, 2 + i % 6, 900 + i) for i in range(6)]
    ok = True
    detail = []
    for s in corpus:
        rep = ind.bounds(s)
        floor = int(np.floor(rep.theta_tilde_upper + 1e-6))
        good = (
            rep.alpha_lower <= floor
            and rep.alpha_lower <= rep.pair_dim_upper
            and rep.alpha_lower <= rep.alpha_hat_upper
            and rep.alpha_lower <= rep.alpha_upper
        )
        ok &= good
        detail.append(rep.alpha_lower)
    rows.append(
        _row(
            "bound-chain", f"{len(corpus)} spaces", "lower <= every upper",
            f"alpha lowers {detail}", "exact", ok, t0,
        )
    )
    t0 = time.perf_counter()
    worst_violation = -np.inf
    for i in range(50):
        g = gmod.erdos_renyi(4 + i % 7, 0.4, 1000 + i)
        a, _ = gmod.alpha_brute(g)
        th = thetamod.theta_classical(g).value
        worst_violation = max(worst_violation, a - th)
    rows.append(
        _row(
            "bound-chain", "alpha <= theta on 50 graphs", "violation <= 1e-6",
            f"max alpha-theta {worst_violation:.2e}", "1e-6", worst_violation <= 1e-6, t0,
        )
    )
    return rows


def crit_monotonicity() -> list[SuiteRow]:
    t0 = time.perf_counter()
    results = _pmap(_mono_task, [1100 + i for i in range(20)])
    worst_sub = min(r[0] for r in results)  # t_small - t_big >= -1e-5
    worst_ind = max(r[1] for r in results)  # t_induced - t_small <= 1e-5
    ok = worst_sub >= -1e-5 and worst_ind <= 1e-5
    return [
        _row(
            "monotonicity", "20 nested + 20 induced", "subgraph and compression monotone",
            f"min sub margin {worst_sub:.2e}, max ind excess {worst_ind:.2e}", "1e-5", ok, t0,
        )
    ]


def crit_solver() -> list[SuiteRow]:
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst_err = 0.0
    worst_eig = 0.0
    worst_gap = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 11))
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        a = 0.5 * (a + a.conj().T)
        prob = lmi.lambda_max_problem(a)
        sol = lmi.solve(prob)
        if not sol.optimal:
            return [
                _row("solver", "100 lambda_max oracles", "all Optimal", f"status {sol.status}", "-", False, t0)
            ]
        check = lmi.validate(prob, sol.y)
        worst_err = max(worst_err, abs(sol.value - float(np.linalg.eigvalsh(a)[-1])))
        worst_eig = max(worst_eig, -min(check["min_block_eigs"]))
        worst_gap = max(worst_gap, sol.gap)
    ok = worst_err <= 1e-7 and worst_eig <= 1e-8 and worst_gap <= 1e-5
    return [
        _row(
            "solver", "100 lambda_max oracles", "err <= 1e-7, feas >= -1e-8, gap <= 1e-5",
            f"err {worst_err:.2e}, infeas {worst_eig:.2e}, gap {worst_gap:.2e}", "1e-7", ok, t0,
        )
    ]


CRITERIA = {
    "pentagon": crit_pentagon,
    "identity": crit_identity,
    "complete": crit_complete,
    "dephasing": crit_dephasing,
    "delta": crit_delta,
    "duan": crit_duan,
    "multiplicativity": crit_multiplicativity,
    "additivity": crit_additivity,
    "classical-consistency": crit_classical_consistency,
    "bound-chain": crit_bound_chain,
    "monotonicity": crit_monotonicity,
    "solver": crit_solver,
}


def run_suite(filter_substring: str = "") -> list[SuiteRow]:
    rows: list[SuiteRow] = []
    for name, fn in CRITERIA.items():
        if filter_substring and filter_substring not in name:
            continue
        rows.extend(fn())
    return rows
