"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion."""

import math
import time

import numpy as np
import pytest

from symqsp.analysis import abs_x_cubed_target, check_decay_bound, decay_profile
from symqsp.chebyshev import ChebyshevCoefficients, forward_map, jacobi_anger
from symqsp.kernel import ReducedPhaseFactors, g, g_full, qsp_unitary
from symqsp.solver import (
    C1,
    C_tilde,
    SolverConfig,
    constants,
    fpi_solve,
    h,
    H_inverse,
    jacobian,
    jacobian_column,
    matrix_one_norm,
)

from conftest import random_phi
from oracles import forward_map_oracle


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        assert ok, detail

    return emit


def test_criterion_1_constants(verdict):
    start = time.perf_counter()
    constants.cache_clear()
    k = constants()
    elapsed = time.perf_counter() - start
    expect = {
        "r_phi": 0.658,
        "r_c": 0.902,
        "r_phi_tilde": 0.544,
        "r_c_tilde": 0.861,
        "gamma_tilde": 0.8189,
    }
    got = k.as_dict()
    worst = max(abs(got[name] - v) for name, v in expect.items())
    ok = worst <= 5e-4 and elapsed < 1.0
    verdict(1, ok, f"max deviation {worst:.2e} (tol 5e-4), {elapsed:.3f} s")


def test_criterion_2_jacobi_anger_norms(verdict):
    start = time.perf_counter()
    c_even, c_odd, d = jacobi_anger(1000, 1e-14, 0.5)
    elapsed = time.perf_counter() - start
    ne, no = c_even.one_norm(), c_odd.one_norm()
    ok = abs(ne - 9.8609) <= 5e-3 and abs(no - 9.7403) <= 5e-3 and elapsed < 5.0
    verdict(2, ok, f"||c_even||_1 = {ne:.5f}, ||c_odd||_1 = {no:.5f}, d = {d}, {elapsed:.3f} s")


def test_criterion_3_solve_reproduction(verdict):
    c_even, c_odd, _ = jacobi_anger(1000, 1e-14, 0.5)
    parts = []
    ok = True
    start = time.perf_counter()
    for name, c in (("even", c_even), ("odd", c_odd)):
        rep = fpi_solve(c, SolverConfig(tol=1e-12))
        ok &= rep.converged and rep.residual <= 1e-12 and 14 <= rep.iterations <= 16
        parts.append(f"{name}: {rep.iterations} iterations, residual {rep.residual:.2e}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60.0
    verdict(3, ok, "; ".join(parts) + f"; {elapsed:.2f} s")


def test_criterion_4_certified_contraction(verdict, rng):
    k = constants()
    rate = k.gamma_tilde
    start = time.perf_counter()
    worst_ratio = 0.0
    worst_envelope = -math.inf
    violations = 0
    for trial in range(50):
        n = int(rng.integers(1, 65))
        parity = "even" if trial % 2 == 0 else "odd"
        norm = k.r_phi_tilde if trial < 10 else rng.uniform(0.0, k.r_phi_tilde)
        star = random_phi(rng, n, norm)
        c = forward_map(star, parity)
        iterates = []
        rep = fpi_solve(c, callback=lambda t, phi: iterates.append(phi))
        if not rep.converged:
            violations += 1
            continue
        err = [float(np.sum(np.abs(phi - star))) for phi in iterates]
        for t in range(1, len(err)):
            envelope = (k.r_phi - k.r_phi_tilde) * rate ** (t - 1)
            worst_envelope = max(worst_envelope, err[t] - envelope)
            if err[t] > envelope + 1e-12:
                violations += 1
            if t + 1 < len(err):
                if err[t + 1] > (rate + 1e-6) * err[t] + 1e-12:
                    violations += 1
                if err[t] > 1e-9:
                    worst_ratio = max(worst_ratio, err[t + 1] / err[t])
    elapsed = time.perf_counter() - start
    ok = violations == 0 and elapsed < 30.0
    verdict(
        4,
        ok,
        f"{violations} violations; worst ratio {worst_ratio:.4f} (limit {rate:.4f}), "
        f"max(e_t - envelope) {worst_envelope:.2e}, {elapsed:.2f} s",
    )


def test_criterion_5_jacobian_identities(verdict, rng):
    start = time.perf_counter()
    origin_err = 0.0
    for parity in ("even", "odd"):
        for n in (1, 4, 16):
            jac = jacobian(ReducedPhaseFactors(np.zeros(n), parity))
            origin_err = max(origin_err, float(np.max(np.abs(jac - 2 * np.eye(n)))))
    fd_err = 0.0
    bound_gap = -math.inf
    step = 1e-5
    for trial in range(20):
        parity = "even" if trial % 2 == 0 else "odd"
        n = int(rng.integers(2, 10))
        phi = ReducedPhaseFactors(random_phi(rng, n, rng.uniform(0.05, 1.2)), parity)
        for col in range(n):
            plus, minus = phi.values.copy(), phi.values.copy()
            plus[col] += step
            minus[col] -= step
            fd = (forward_map(plus, parity).coeffs - forward_map(minus, parity).coeffs) / (2 * step)
            fd_err = max(fd_err, float(np.max(np.abs(jacobian_column(phi, col).coeffs - fd))))
        dev = matrix_one_norm(jacobian(phi) - 2 * np.eye(n))
        bound_gap = max(bound_gap, dev - h(phi.one_norm()))
    elapsed = time.perf_counter() - start
    ok = origin_err <= 1e-12 and fd_err <= 1e-8 and bound_gap <= 1e-8 and elapsed < 30.0
    verdict(
        5,
        ok,
        f"DF(0) error {origin_err:.1e}, finite-difference error {fd_err:.1e}, "
        f"max(||DF-2I||_1 - h) {bound_gap:.2e}, {elapsed:.2f} s",
    )


def test_criterion_6_oracle_equivalence(verdict, rng):
    start = time.perf_counter()
    worst = 0.0
    count = 0
    for n in range(1, 5):
        for parity in ("even", "odd"):
            for _ in range(50):
                phi = rng.uniform(-1.5, 1.5, n)
                diff = forward_map(phi, parity).coeffs - forward_map_oracle(phi, parity)
                worst = max(worst, float(np.max(np.abs(diff))))
                count += 1
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-11 and elapsed < 10.0
    verdict(6, ok, f"{count} cases, max coefficient difference {worst:.1e}, {elapsed:.2f} s")


def test_criterion_7_decay_reproduction(verdict):
    start = time.perf_counter()
    c = abs_x_cubed_target(0.8, 1000)
    rep = fpi_solve(c)
    prof = decay_profile(c, rep.phi)
    bound_ok = check_decay_bound(prof)
    elapsed = time.perf_counter() - start
    ok = (
        rep.converged
        and abs(c.one_norm() - 0.8149) <= 1e-3
        and bound_ok
        and -4.5 <= prof.fitted_rate_c <= -3.5
        and -4.5 <= prof.fitted_rate_phi <= -3.5
        and elapsed < 120.0
    )
    verdict(
        7,
        ok,
        f"||c||_1 = {c.one_norm():.5f}, bound holds: {bound_ok}, "
        f"slopes c {prof.fitted_rate_c:.3f} phi {prof.fitted_rate_phi:.3f}, "
        f"{rep.iterations} iterations, {elapsed:.2f} s",
    )


def test_criterion_8_norm_bound_suite(verdict, rng):
    start = time.perf_counter()
    trials = 200
    grid = np.linspace(-1, 1, 100)
    bad = {"sinh": 0, "abs_g": 0, "padding": 0, "re_im": 0, "quasi_isometry": 0}
    for trial in range(trials):
        parity = "even" if trial % 2 == 0 else "odd"
        n = int(rng.integers(1, 20))
        phi = ReducedPhaseFactors(random_phi(rng, n, rng.uniform(0.0, 1.5)), parity)

        if forward_map(phi).one_norm() > math.sinh(2 * phi.one_norm()) + 1e-10:
            bad["sinh"] += 1

        wide = ReducedPhaseFactors(rng.uniform(-3, 3, n), parity)
        if np.max(np.abs(g(grid, wide))) > 1.0:
            bad["abs_g"] += 1

        pad = [1, 2, 5][trial % 3]
        padded = ReducedPhaseFactors(np.concatenate([wide.values, np.zeros(pad)]), parity)
        if np.max(np.abs(g(grid, wide) - g(grid, padded))) > 1e-12:
            bad["padding"] += 1

        psi = rng.uniform(-2, 2, int(rng.integers(1, 15)))
        shifted = psi.copy()
        shifted[0] += np.pi / 4
        shifted[-1] += np.pi / 4
        re = np.array([qsp_unitary(x, psi)[0, 0].real for x in grid[::4]])
        if np.max(np.abs(re - g_full(grid[::4], shifted))) > 1e-12:
            bad["re_im"] += 1

        theta = rng.uniform(0.05, 0.85)
        m = int(rng.integers(1, 12))
        c1 = ChebyshevCoefficients(random_phi(rng, m, rng.uniform(0, theta)), parity)
        c2 = ChebyshevCoefficients(random_phi(rng, m, rng.uniform(0, theta)), parity)
        r1 = fpi_solve(c1, SolverConfig(max_iter=500))
        r2 = fpi_solve(c2, SolverConfig(max_iter=500))
        dphi = float(np.sum(np.abs(r1.phi.values - r2.phi.values)))
        dc = float(np.sum(np.abs(c1.coeffs - c2.coeffs)))
        lower = C_tilde(theta) * dphi
        upper = C1(H_inverse(theta)) * dphi
        if not (r1.converged and r2.converged and lower <= dc + 1e-10 and dc <= upper + 1e-10):
            bad["quasi_isometry"] += 1
    elapsed = time.perf_counter() - start
    ok = sum(bad.values()) == 0 and elapsed < 60.0
    verdict(8, ok, f"{trials} trials each, violations {bad}, {elapsed:.2f} s")


def test_criterion_9_quadratic_scaling(verdict):
    taus = [50, 100, 200, 400]
    times = []
    for tau in taus:
        c_even, _, _ = jacobi_anger(tau, 1e-14, 0.5)
        fpi_solve(c_even)  # warm-up: compilation and caches
        best = math.inf
        for _ in range(7):
            t0 = time.perf_counter()
            fpi_solve(c_even)
            best = min(best, time.perf_counter() - t0)
        times.append(best)
    slope = float(np.polyfit(np.log(taus), np.log(times), 1)[0])
    ok = abs(slope - 2.0) <= 0.4
    shown = ", ".join(f"tau={t}: {s * 1e3:.2f} ms" for t, s in zip(taus, times))
    verdict(9, ok, f"log-log slope {slope:.3f} (need 2.0 +- 0.4); {shown}")
