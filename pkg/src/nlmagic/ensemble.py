"""Haar-ensemble statistics of the nonlocal-magic bound and their large-L limit.

For Haar-random pure Gaussian states the squared spectrum ``x = nu**2`` of
the smaller side follows a Jacobi-type law whose limiting density on
``(0, x_tilde)``, ``x_tilde = 4 ell (1 - ell)``, gives the average bound
density in closed form.
"""
import cmath
import math
from dataclasses import dataclass
from functools import partial

import numpy as np
from scipy import integrate

from . import _rng
from ._parallel import pmap
from .errors import InputError, NumericError
from .gstate import Bipartition, apply_orthogonal, entanglement_spectrum, vacuum
from .magic import nonlocal_bound
from .skewlin import haar_special_orthogonal


@dataclass(frozen=True)
class EnsembleEstimate:
    L: int
    ell: float
    samples: int
    mean: float
    stderr: float


@dataclass(frozen=True)
class LimitDensity:
    ell: float

    def __post_init__(self):
        if not 0.0 < self.ell < 1.0:
            raise InputError("ell must lie in (0, 1)")

    @property
    def x_tilde(self):
        return 4.0 * self.ell * (1.0 - self.ell)

    @property
    def ell_min(self):
        # the density describes the smaller side's min(m, n) modes
        return min(self.ell, 1.0 - self.ell)


def _as_density(d):
    return d if isinstance(d, LimitDensity) else LimitDensity(float(d))


def rho_limit(d, x):
    """Limiting density of ``x = nu**2``; zero outside ``(0, x_tilde)``."""
    d = _as_density(d)
    x = np.asarray(x, dtype=float)
    xt = d.x_tilde
    inside = (x > 0.0) & (x < xt)
    xs = np.where(inside, x, 0.5 * xt)
    val = np.sqrt((xt - xs) / xs) / (1.0 - xs) / (2.0 * math.pi * d.ell_min)
    out = np.where(inside, val, 0.0)
    return float(out) if out.ndim == 0 else out


def _theta_weight(xt):
    # rho(x) dx under x = xt sin^2(theta), up to the factor xt / (pi ell)
    def w(th):
        c2 = math.cos(th) ** 2
        return c2 / (c2 + (1.0 - xt) * math.sin(th) ** 2)
    return w


def _quad(f, a, b, what):
    val, err, info = integrate.quad(f, a, b, epsabs=1e-13, epsrel=1e-12, limit=200,
                                    full_output=True)[:3]
    if err > 1e-9 * max(1.0, abs(val)):
        raise NumericError(f"{what}: quadrature did not converge (value {val}, error {err}, "
                           f"{info.get('neval')} evaluations)")
    return val


def rho_cdf(d, x):
    """``int_0^x rho``, evaluated in the ``theta`` variable."""
    d = _as_density(d)
    xt = d.x_tilde
    x = min(max(float(x), 0.0), xt)
    if x == 0.0:
        return 0.0
    th = math.asin(math.sqrt(x / xt))
    return xt / (math.pi * d.ell_min) * _quad(_theta_weight(xt), 0.0, th, "rho_cdf")


def rho_normalization(d):
    return rho_cdf(d, _as_density(d).x_tilde)


def j_quadrature(ell):
    """Large-L average bound density ``-ell int log(1 - x + x^2) rho(x) dx`` by quadrature."""
    d = LimitDensity(float(ell))
    xt = d.x_tilde
    w = _theta_weight(xt)

    def f(th):
        x = xt * math.sin(th) ** 2
        return math.log(1.0 - x + x * x) * w(th)

    return -xt / math.pi * _quad(f, 0.0, 0.5 * math.pi, "j_quadrature")


def j_thermo(ell):
    """Closed form of the large-L average bound density (principal branches)."""
    xt = LimitDensity(float(ell)).x_tilde
    s = math.sqrt(max(1.0 - xt, 0.0))
    w = cmath.sqrt(1.0 - xt * cmath.exp(1j * math.pi / 3.0))
    val = 2.0 * s * cmath.log((s + w) / (s + 1.0)) - 2.0 * cmath.log((1.0 + w) / 2.0)
    return val.real


def _haar_state(seed, L, index):
    rng = _rng.stream(seed, index)
    return apply_orthogonal(vacuum(L), haar_special_orthogonal(rng, 2 * L))


def _one_sample(index, seed, L, m, alpha):
    gamma = _haar_state(seed, L, index)
    nus = entanglement_spectrum(gamma, Bipartition.cut(L, m))
    return nonlocal_bound(nus, alpha) / L


def _one_spectrum(index, seed, L, m):
    return entanglement_spectrum(_haar_state(seed, L, index), Bipartition.cut(L, m))


def _seed_of(rng):
    if isinstance(rng, np.random.Generator):
        return int(rng.integers(0, 2 ** 63))
    return int(rng)


def sample_nonlocal_density(rng, L, m, samples, alpha=2, workers=None):
    """Mean and standard error of ``bound / L`` over Haar-random pure Gaussian states.

    ``rng`` is a master seed (or a generator used to draw one); sample ``i``
    uses the stream ``(seed, i)`` so results do not depend on ``workers``.
    """
    if not 1 <= m <= L - 1:
        raise InputError(f"need 1 <= m <= L - 1, got m={m}, L={L}")
    if samples < 1:
        raise InputError("samples must be >= 1")
    seed = _seed_of(rng)
    vals = np.array(pmap(partial(_one_sample, seed=seed, L=L, m=m, alpha=alpha),
                         range(samples), workers))
    stderr = float(np.std(vals, ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return EnsembleEstimate(L, m / L, samples, float(np.sum(vals) / samples), stderr)


def sample_spectra(rng, L, m, samples, workers=None):
    """Entanglement spectra of ``samples`` Haar-random states, shape ``(samples, min(m, n))``."""
    seed = _seed_of(rng)
    return np.array(pmap(partial(_one_spectrum, seed=seed, L=L, m=m), range(samples), workers))


def ks_distance(xs, d):
    """Kolmogorov-Smirnov distance between samples ``xs`` and the limiting density."""
    xs = np.sort(np.asarray(xs, dtype=float))
    n = xs.size
    cdf = np.array([rho_cdf(d, x) for x in xs])
    upper = np.arange(1, n + 1) / n - cdf
    lower = cdf - np.arange(n) / n
    return float(max(upper.max(), lower.max()))
