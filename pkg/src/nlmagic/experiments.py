"""Figure-level drivers: each returns plain rows that the CLI writes out."""
import math
from dataclasses import dataclass
from functools import partial

import numpy as np

from . import _rng
from ._parallel import pmap
from .anneal import AnnealingSchedule, anneal
from .ensemble import j_thermo, sample_nonlocal_density
from .errors import DegeneracyError
from .gstate import Bipartition, apply_orthogonal, entanglement_entropy, entanglement_spectrum, vacuum
from .magic import nonlocal_bound
from .models import brickwall_period, evolve, ground_state, kitaev, neel, xy
from .skewlin import haar_special_orthogonal

DEGENERACY_SHIFT = 1e-8


@dataclass(frozen=True)
class Fit:
    slope: float
    intercept: float
    rss: float
    r2: float


def linear_fit(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    rss = float(np.sum((y - (intercept + slope * x)) ** 2))
    tss = float(np.sum((y - y.mean()) ** 2))
    return Fit(float(slope), float(intercept), rss, 1.0 - rss / tss if tss > 0 else 1.0)


def haar_state(seed, L, index=0):
    rng = _rng.stream(seed, index)
    return apply_orthogonal(vacuum(L), haar_special_orthogonal(rng, 2 * L))


# --- annealing ---------------------------------------------------------------

def anneal_run(seed, L, m, schedule=None, run=0):
    """Anneal the Haar-random state drawn from stream ``(seed, 2 run)``."""
    schedule = schedule or AnnealingSchedule()
    gamma0 = haar_state(seed, L, 2 * run)
    return anneal(gamma0, Bipartition.cut(L, m), schedule, _rng.stream(seed, 2 * run + 1))


# --- ensemble ----------------------------------------------------------------

def ensemble_rows(Ls, ells, samples, seed, alpha=2, workers=None):
    rows = []
    for i, L in enumerate(Ls):
        for ell in ells:
            m = int(round(ell * L))
            if not 1 <= m <= L - 1:
                continue
            est = sample_nonlocal_density(_grid_seed(seed, i, m), L, m, samples, alpha, workers)
            rows.append((L, m / L, samples, est.mean, est.stderr, j_thermo(m / L)))
    return rows


def _grid_seed(seed, i, m):
    return int(_rng.stream(seed, 1_000_003, i, m).integers(0, 2 ** 63))


# --- Kitaev ground states ------------------------------------------------------

def kitaev_bound(L, mu, m=None, t=1.0, delta=1.0, bc="periodic", perturb=False):
    """Ground-state bound at cut ``m`` (default: half chain) and a status flag."""
    m = L // 2 if m is None else m
    p = Bipartition.cut(L, m)
    try:
        gamma = ground_state(kitaev(L, t, delta, mu, bc))
        flag = "ok"
    except DegeneracyError:
        if not perturb:
            return math.nan, "degenerate"
        gamma = ground_state(kitaev(L, t, delta, mu + DEGENERACY_SHIFT, bc))
        flag = "perturbed"
    return nonlocal_bound(entanglement_spectrum(gamma, p), 2), flag


def kitaev_mu_rows(Ls, mus, t=1.0, delta=1.0, bc="periodic", perturb=False):
    rows = []
    for L in Ls:
        for mu in mus:
            val, flag = kitaev_bound(L, mu, None, t, delta, bc, perturb)
            rows.append((float(mu), L, val, flag))
    return rows


def kitaev_ell_rows(Ls, mu=2.0, t=1.0, delta=1.0, bc="periodic", perturb=False):
    rows = []
    for L in Ls:
        try:
            gamma = ground_state(kitaev(L, t, delta, mu, bc))
            flag = "ok"
        except DegeneracyError:
            if not perturb:
                rows.extend((m / L, L, math.nan, "degenerate") for m in range(1, L))
                continue
            gamma = ground_state(kitaev(L, t, delta, mu + DEGENERACY_SHIFT, bc))
            flag = "perturbed"
        for m in range(1, L):
            nus = entanglement_spectrum(gamma, Bipartition.cut(L, m), check=False)
            rows.append((m / L, L, nonlocal_bound(nus, 2), flag))
    return rows


# --- dynamics ------------------------------------------------------------------

def _circuit_realization(r, seed, L, periods, alphas):
    rng = _rng.stream(seed, r)
    p = Bipartition.half(L)
    gamma = vacuum(L)
    out = np.zeros((periods + 1, len(alphas)))
    for t in range(1, periods + 1):
        gamma = brickwall_period(gamma, rng)
        nus = entanglement_spectrum(gamma, p, check=False)
        out[t] = [nonlocal_bound(nus, a) for a in alphas]
    return out


def circuit_curves(L, periods, realizations, alphas=(2, 3, 4), seed=0, workers=None):
    """Mean and standard error of the half-chain bound vs. time, shape ``(periods+1, n_alpha)``."""
    data = np.array(pmap(partial(_circuit_realization, seed=seed, L=L, periods=periods,
                                 alphas=tuple(alphas)), range(realizations), workers))
    mean = data.mean(axis=0)
    stderr = (data.std(axis=0, ddof=1) / math.sqrt(realizations)
              if realizations > 1 else np.zeros_like(mean))
    return np.arange(periods + 1), mean, stderr


def quench_curve(L, gamma_an, times, bc="open"):
    """Half-chain bound and von Neumann entropy after a Neel quench in the XY chain."""
    ham = xy(L, gamma_an, bc)
    g0 = neel(L)
    p = Bipartition.half(L)
    m2, ent = [], []
    for t in times:
        nus = entanglement_spectrum(evolve(g0, ham, t), p, check=False)
        m2.append(nonlocal_bound(nus, 2))
        ent.append(entanglement_entropy(nus))
    return np.array(m2), np.array(ent)
