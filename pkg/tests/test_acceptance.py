"""Numbered acceptance criteria, each at its stated tolerance and time budget.

A summary line per criterion is printed at the end of the session.
"""
import math
import time
import warnings

import numpy as np
import pytest

from nlmagic import _rng, fock
from nlmagic.anneal import AnnealingSchedule
from nlmagic.ensemble import (LimitDensity, j_quadrature, j_thermo, ks_distance, rho_normalization,
                              sample_nonlocal_density, sample_spectra)
from nlmagic.experiments import (anneal_run, circuit_curves, haar_state, kitaev_bound,
                                 kitaev_ell_rows, linear_fit, quench_curve)
from nlmagic.gstate import Bipartition
from nlmagic.magic import (canonical_gamma, f_alpha_bruteforce, f_alpha_canonical,
                           interblock_hessian, lp_schatten_gap, nonlocal_bound, sre_exact)

J_HALF = math.log(8 - 4 * math.sqrt(3))
SEED = 2024


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.1f}s, budget {self.seconds}s"


@pytest.mark.acceptance(1, "exact SRE equals the Pauli-string SRE (L in {2,3}, alpha in {2,3})")
def test_oracle_equivalence():
    with Budget(30):
        worst = 0.0
        for L in (2, 3):
            for i in range(50):
                gamma = haar_state(SEED, L, i)
                psi = fock.gaussian_state_vector(gamma)
                for alpha in (2, 3):
                    worst = max(worst, abs(sre_exact(gamma, alpha) - fock.pauli_sre(psi, alpha)))
        assert worst <= 1e-10, worst


@pytest.mark.acceptance(2, "canonical states saturate the bound at L=4")
def test_bound_saturation():
    with Budget(30):
        rng = _rng.stream(SEED, 2)
        worst = 0.0
        for i in range(50):
            m = 1 + i % 2
            p = Bipartition(m, 4 - m)
            nus = np.sort(rng.uniform(0, 1, m))[::-1]
            g = canonical_gamma(nus, p)
            worst = max(worst, abs(sre_exact(g, 2) - nonlocal_bound(nus, 2)))
        assert worst <= 1e-10, worst


@pytest.mark.acceptance(3, "annealing never goes below the bound and ends within 1e-3 of it")
def test_annealing_lower_bound():
    sched = AnnealingSchedule()
    with Budget(600):
        gaps, violations = [], []
        for m in (1, 2):
            for run in range(20):
                traj, _ = anneal_run(SEED + m, 4, m, sched, run)
                violations.append(traj.m2.min() - traj.bound)
                gaps.append(traj.final_gap)
        assert min(violations) >= -1e-8, min(violations)
        assert max(gaps) <= 1e-3, max(gaps)


@pytest.mark.acceptance(4, "thermodynamic constant log(8 - 4 sqrt 3) and quadrature agreement")
def test_thermodynamic_constant():
    with Budget(10):
        assert abs(j_thermo(0.5) - 0.0693365) <= 1e-6
        assert abs(j_thermo(0.5) - J_HALF) <= 1e-6
        for ell in (0.1, 0.25, 0.4, 0.5):
            assert abs(j_quadrature(ell) - j_thermo(ell)) <= 1e-8, ell


@pytest.mark.acceptance(5, "ensemble mean density converges to the large-L constant")
def test_ensemble_convergence():
    with Budget(300):
        est = {L: sample_nonlocal_density(_rng.stream(SEED, 5, L), L, L // 2, 100)
               for L in (16, 64, 128)}
        assert abs(est[64].mean - 0.0693365) <= 0.0035, est[64]
        dev16 = abs(est[16].mean - J_HALF)
        dev128 = abs(est[128].mean - J_HALF)
        allowance = 2 * math.hypot(est[16].stderr, est[128].stderr)
        assert dev128 < dev16 + allowance, (dev16, dev128, allowance)


@pytest.mark.acceptance(6, "pooled x = nu^2 follows the limiting density (KS <= 0.05)")
def test_density_law():
    with Budget(300):
        d = LimitDensity(0.5)
        assert abs(rho_normalization(d) - 1.0) <= 1e-6
        xs = sample_spectra(_rng.stream(SEED, 6), 128, 64, 100).ravel() ** 2
        assert xs.size == 6400
        assert ks_distance(xs, d) <= 0.05


@pytest.mark.acceptance(7, "Kitaev chain: trivial limits, peak near mu=2, log-L growth at criticality")
def test_kitaev_phenomenology():
    with Budget(600):
        failures = []
        for mu in (0.0, 100.0):
            val, _ = kitaev_bound(128, mu)
            if not val <= 1e-6:
                failures.append(f"m2nl(mu={mu}) = {val:.3e} > 1e-6")
        mus = np.round(np.arange(0.0, 4.0001, 0.05), 10)
        vals = np.array([kitaev_bound(128, mu, perturb=True)[0] for mu in mus])
        peak = mus[np.nanargmax(vals)]
        if not 1.8 <= peak <= 2.2:
            failures.append(f"argmax mu = {peak}")
        Ls = [32, 64, 128, 256]
        half = []
        for L in Ls:
            rows = kitaev_ell_rows([L], 2.0, perturb=True)
            half.append(next(r[2] for r in rows if r[0] == 0.5))
        fit = linear_fit(np.log(Ls), half)
        if not (fit.slope > 0 and fit.r2 >= 0.9):
            failures.append(f"log-L fit slope {fit.slope:.4g}, R^2 {fit.r2:.4g}")
        assert not failures, "; ".join(failures)


@pytest.mark.acceptance(8, "brick-wall circuit: nonlocal magic grows like t^(1/2)")
def test_circuit_diffusion():
    with Budget(1800):
        ts, mean, _ = circuit_curves(200, 100, 10, (2,), seed=SEED)
        win = (ts >= 10) & (ts <= 100)
        fit = linear_fit(np.log(ts[win]), np.log(mean[win, 0]))
        assert 0.4 <= fit.slope <= 0.6, fit


@pytest.mark.acceptance(9, "Neel quench: logarithmic growth in XX, linear growth in XY")
def test_xx_xy_separation():
    with Budget(600):
        times = np.arange(5.0, 50.0001, 0.5)
        logt = np.log(times)
        m2_xx, ent_xx = quench_curve(200, 0.0, times)
        assert linear_fit(logt, m2_xx).rss < linear_fit(times, m2_xx).rss
        assert linear_fit(times, ent_xx).r2 >= 0.98
        m2_xy, _ = quench_curve(200, 0.5, times)
        assert linear_fit(times, m2_xy).rss < linear_fit(logt, m2_xy).rss


@pytest.mark.acceptance(10, "entrywise/Schatten inequality, F_alpha product formula, negative Hessian")
def test_norm_inequality_product_formula_hessian():
    with Budget(300):
        rng = _rng.stream(SEED, 10)
        for _ in range(1000):
            a = rng.standard_normal((rng.integers(1, 6), rng.integers(1, 6)))
            for alpha in (2, 3):
                lhs, rhs = lp_schatten_gap(a, alpha)
                assert lhs <= rhs * (1 + 1e-12)
        for _ in range(20):
            r, c = rng.integers(1, 5, 2)
            diag = np.zeros((r, c))
            k = min(r, c)
            diag[np.arange(k), np.arange(k)] = rng.standard_normal(k)
            for alpha in (2, 3):
                lhs, rhs = lp_schatten_gap(diag, alpha)
                assert abs(lhs - rhs) <= 1e-12 * max(1.0, rhs)

        for m in (1, 2):
            p = Bipartition(m, 4 - m)
            for _ in range(10):
                nus = np.sort(rng.uniform(0, 1, m))[::-1]
                g = canonical_gamma(nus, p)
                for alpha in (2, 3):
                    bf, cf = f_alpha_bruteforce(g, alpha), f_alpha_canonical(nus, p, alpha)
                    assert abs(bf - cf) <= 1e-10 * cf

        worst = -np.inf
        with warnings.catch_warnings():
            warnings.simplefilter("error", RuntimeWarning)
            for _ in range(100):
                nu_a, nu_b = rng.uniform(0, 1, 2)
                worst = max(worst, interblock_hessian(nu_a, nu_b, 2).max())
        assert worst < -1e-8, worst
