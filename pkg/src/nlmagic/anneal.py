"""Simulated annealing of ``M_2`` over the local Gaussian orbit of a state.

Moves are ``gamma -> (O_A + O_B) gamma (O_A + O_B)^T`` with
``O_X = exp(eps K_X)``, ``K_X = (Q - Q^T)/2`` for Gaussian ``Q``, accepted by
the Metropolis rule.  ``beta`` grows linearly per stage while the step size
shrinks as ``eps0 / sqrt(beta)``.  Local moves leave the entanglement
spectrum, hence the bound, unchanged.
"""
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import kernels
from .errors import ContractError, InputError, ResourceError
from .gstate import check_pure, entanglement_spectrum, local_orthogonal
from .magic import SRE_CAP, nonlocal_bound
from .skewlin import antisymmetrize, expm_antisymmetric, random_antisymmetric


@dataclass(frozen=True)
class AnnealingSchedule:
    beta0: float = 1.0
    d_beta: float = 0.5
    stages: int = 8000
    steps_per_stage: int = 5
    eps0: float = 1.0

    def __post_init__(self):
        if not (self.beta0 > 0 and self.d_beta > 0 and self.eps0 > 0):
            raise InputError("beta0, d_beta and eps0 must be positive")
        if self.stages < 1 or self.steps_per_stage < 1:
            raise InputError("stages and steps_per_stage must be >= 1")

    def beta(self, stage):
        return self.beta0 + stage * self.d_beta

    def eps(self, stage):
        return self.eps0 / math.sqrt(self.beta(stage))

    def as_dict(self):
        return asdict(self)


@dataclass
class Trajectory:
    """Column arrays, one entry per Metropolis proposal (entry 0 is the start state)."""
    step: np.ndarray
    beta: np.ndarray
    m2: np.ndarray
    m2_best: np.ndarray
    accepted: np.ndarray
    bound: float

    def __len__(self):
        return self.step.size

    @property
    def gap(self):
        return self.m2 - self.bound

    @property
    def final_gap(self):
        return float(self.m2_best[-1] - self.bound)


def propose_local_move(rng, p, eps):
    """Random block-diagonal rotation ``exp(eps K_A) (+) exp(eps K_B)``."""
    if not eps > 0:
        raise InputError("eps must be positive")
    o_a = expm_antisymmetric(random_antisymmetric(rng, 2 * p.m), eps)
    o_b = expm_antisymmetric(random_antisymmetric(rng, 2 * p.n), eps)
    return local_orthogonal(o_a, o_b)


def _m2(gamma, L):
    # pure states only: det(I + gamma) = 2**L
    return -(math.log(kernels.minor_power_sum(gamma, 2.0)) - 2 * L * math.log(2.0)) - L * math.log(2.0)


def anneal(gamma0, p, schedule, rng, cap=SRE_CAP, spectrum_tol=1e-8):
    """Run one annealing chain; returns ``(trajectory, best_gamma)``."""
    gamma = np.ascontiguousarray(gamma0, dtype=float)
    L = gamma.shape[0] // 2
    if L > cap:
        raise ResourceError(f"annealing needs the exact SRE; L={L} exceeds cap {cap}")
    check_pure(gamma)
    spec0 = entanglement_spectrum(gamma, p)
    bound = nonlocal_bound(spec0, 2)

    n_total = schedule.stages * schedule.steps_per_stage + 1
    steps = np.arange(n_total)
    betas = np.empty(n_total)
    m2s = np.empty(n_total)
    best = np.empty(n_total)
    acc = np.zeros(n_total, dtype=bool)

    cur = _m2(gamma, L)
    best_val, best_gamma = cur, gamma.copy()
    betas[0], m2s[0], best[0], acc[0] = schedule.beta0, cur, cur, True

    i = 1
    for stage in range(schedule.stages):
        beta, eps = schedule.beta(stage), schedule.eps(stage)
        for _ in range(schedule.steps_per_stage):
            rot = propose_local_move(rng, p, eps)
            trial = np.ascontiguousarray(rot @ gamma @ rot.T)
            new = _m2(trial, L)
            delta = new - cur
            u = rng.random()
            if delta <= 0.0 or u < math.exp(-beta * delta):
                gamma, cur = trial, new
                acc[i] = True
                if cur < best_val:
                    best_val, best_gamma = cur, gamma.copy()
            betas[i], m2s[i], best[i] = beta, cur, best_val
            i += 1
        gamma = np.ascontiguousarray(antisymmetrize(gamma))
        drift = np.max(np.abs(entanglement_spectrum(gamma, p, check=False) - spec0))
        if drift > spectrum_tol:
            raise ContractError(f"entanglement spectrum drifted by {drift:.3e} during annealing")

    return Trajectory(steps, betas, m2s, best, acc, bound), best_gamma
