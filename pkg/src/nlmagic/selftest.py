"""Release-gate checks: oracle equivalences and closed-form cross-checks."""
import math
import time

import numpy as np

from . import _rng, ensemble, fock, kernels, magic
from .gstate import Bipartition
from .experiments import haar_state


class CheckFailed(AssertionError):
    pass


def _require(cond, message):
    if not cond:
        raise CheckFailed(message)


def check_sre_oracle(seed=0, states=5):
    for L in (2, 3):
        for i in range(states):
            gamma = haar_state(seed, L, i)
            psi = fock.gaussian_state_vector(gamma)
            for alpha in (2, 3):
                got = magic.sre_exact(gamma, alpha)
                ref = fock.pauli_sre(psi, alpha)
                _require(abs(got - ref) <= 1e-10,
                         f"sre_exact != Pauli oracle: L={L} state={i} alpha={alpha} "
                         f"got={got!r} ref={ref!r}")


def check_saturation(seed=0, states=10):
    rng = _rng.stream(seed, 99)
    p = Bipartition(2, 2)
    for i in range(states):
        nus = np.sort(rng.uniform(0, 1, 2))[::-1]
        got = magic.sre_exact(magic.canonical_gamma(nus, p), 2)
        ref = magic.nonlocal_bound(nus, 2)
        _require(abs(got - ref) <= 1e-10,
                 f"canonical SRE != bound: nus={nus.tolist()} got={got!r} ref={ref!r}")


def check_thermodynamic():
    j_half = ensemble.j_thermo(0.5)
    _require(abs(j_half - math.log(8 - 4 * math.sqrt(3))) <= 1e-6,
             f"j_thermo(1/2) = {j_half!r}, expected log(8 - 4 sqrt 3)")
    for ell in (0.1, 0.25, 0.4, 0.5):
        a, b = ensemble.j_thermo(ell), ensemble.j_quadrature(ell)
        _require(abs(a - b) <= 1e-8, f"j_thermo != j_quadrature at ell={ell}: {a!r} vs {b!r}")


def check_schatten(seed=0, trials=1000):
    rng = _rng.stream(seed, 7)
    for t in range(trials):
        a = rng.standard_normal((3, 5))
        for alpha in (2, 3):
            lhs, rhs = magic.lp_schatten_gap(a, alpha)
            _require(lhs <= rhs + 1e-12, f"entrywise bound exceeds Schatten norm at trial {t}, alpha={alpha}")
    diag = np.zeros((3, 5))
    diag[np.arange(3), np.arange(3)] = [0.3, -1.2, 0.7]
    for alpha in (2, 3):
        lhs, rhs = magic.lp_schatten_gap(diag, alpha)
        _require(abs(lhs - rhs) <= 1e-12, f"entrywise and Schatten sums differ on a diagonal matrix (alpha={alpha})")


def check_hessian(seed=0, pairs=20):
    rng = _rng.stream(seed, 11)
    for _ in range(pairs):
        a, b = rng.uniform(0.02, 0.98, 2)
        ev = magic.interblock_hessian(a, b, 2, 1e-3)
        _require(ev.max() < -1e-8, f"inter-block Hessian not negative at nu=({a}, {b}): max={ev.max()}")


def check_backends(seed=0):
    mods = kernels.backends()
    gamma = np.ascontiguousarray(haar_state(seed, 4, 0))
    vals = {name: mod.minor_power_sum(gamma, 2.0) for name, mod in mods.items()}
    ref = vals["python"]
    for name, v in vals.items():
        _require(abs(v - ref) <= 1e-12 * ref, f"kernel backend {name} disagrees: {v!r} vs {ref!r}")


CHECKS = [
    ("sre_exact matches the dense Pauli-string oracle (L<=3)", check_sre_oracle),
    ("exact SRE of canonical states saturates the bound", check_saturation),
    ("closed-form J(ell) matches quadrature", check_thermodynamic),
    ("entrywise/Schatten inequality on random matrices", check_schatten),
    ("inter-block Hessian is negative definite", check_hessian),
    ("compiled and numpy kernels agree", check_backends),
]


def run(out=print):
    """Run every check; returns the number of failures."""
    t0 = time.perf_counter()
    failures = 0
    for name, fn in CHECKS:
        t = time.perf_counter()
        try:
            fn()
        except CheckFailed as exc:
            failures += 1
            out(f"FAIL  {name}: {exc}")
        else:
            out(f"pass  {name} ({time.perf_counter() - t:.2f}s)")
    out(f"{len(CHECKS) - failures}/{len(CHECKS)} checks passed in "
        f"{time.perf_counter() - t0:.1f}s (kernel backend: {kernels.BACKEND})")
    return failures
