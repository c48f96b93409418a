"""Stabilizer Renyi entropies of Gaussian states and the nonlocal-magic bound.

The exact SRE sums ``det(gamma|x) ** alpha`` over all even Majorana supports
``x`` (``4**L`` terms, so it is capped at small ``L``).  The bound depends only
on the entanglement spectrum and is cheap at any size.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ContractError, InputError, ResourceError
from .gstate import Bipartition, check_pure, entanglement_spectrum, local_orthogonal
from .skewlin import Z2, antisymmetric_canonical, antisymmetrize, block_j, expm_antisymmetric

SRE_CAP = 8


def _check_alpha(alpha):
    if not alpha > 0 or alpha == 1:
        raise InputError(f"alpha must be positive and != 1, got {alpha}")


def sre_exact(gamma, alpha, cap=SRE_CAP, backend=None):
    """Exact ``alpha``-SRE (nats) of a pure Gaussian state from its principal minors."""
    _check_alpha(alpha)
    gamma = np.ascontiguousarray(gamma, dtype=float)
    L = gamma.shape[0] // 2
    if L > cap:
        raise ResourceError(f"exact SRE enumerates 4**L supports; L={L} exceeds cap {cap}")
    check_pure(gamma)
    norm = np.linalg.det(np.eye(2 * L) + gamma)
    if abs(norm / 2.0 ** L - 1.0) > 1e-6:
        raise ContractError(f"det(I + gamma) = {norm}, expected 2**{L} for a pure state")
    mps = (backend or kernels).minor_power_sum
    total = mps(gamma, float(alpha))
    log_sum = math.log(total) - alpha * L * math.log(2.0)
    return log_sum / (1.0 - alpha) - L * math.log(2.0)


def f_alpha_bruteforce(gamma, alpha, backend=None):
    """``sum_x |det gamma|x| ** alpha``: the Pauli-weight functional maximized by local moves."""
    gamma = np.ascontiguousarray(gamma, dtype=float)
    return (backend or kernels).minor_power_sum(gamma, float(alpha))


def mode_contributions(nus, alpha):
    """Per-mode terms ``log((1 + nu^(2a) + mu^(2a)) / 2) / (1 - a)`` of the bound."""
    _check_alpha(alpha)
    x = np.clip(np.asarray(nus, dtype=float), 0.0, 1.0) ** 2
    return np.log(0.5 * (1.0 + x ** alpha + (1.0 - x) ** alpha)) / (1.0 - alpha)


def nonlocal_bound(nus, alpha):
    """Closed-form nonlocal-magic bound from the entanglement spectrum ``nus``."""
    return math.fsum(mode_contributions(nus, alpha))


def f_alpha_canonical(nus, p, alpha):
    """``2**s * prod_k (1 + nu_k**(2 alpha) + mu_k**(2 alpha))`` with ``s = max(m, n)``."""
    if alpha != int(alpha) or alpha < 2:
        raise InputError("f_alpha_canonical assumes an integer alpha >= 2")
    x = np.clip(np.asarray(nus, dtype=float), 0.0, 1.0) ** 2
    s = max(p.m, p.n)
    return 2.0 ** s * float(np.prod(1.0 + x ** alpha + (1.0 - x) ** alpha))


def canonical_gamma(nus, p):
    """Canonical covariance matrix in A|B ordering for spectrum ``nus`` (``m <= n``).

    Entangled pair ``k`` couples A-mode ``k`` to B-mode ``k`` through
    ``[[nu J, mu Z], [-mu Z, nu J]]``; the last ``n - m`` B-modes are ``J``.
    """
    nus = np.asarray(nus, dtype=float)
    if p.m > p.n or nus.size != p.m:
        raise InputError("canonical_gamma needs m <= n and len(nus) == m")
    mus = np.sqrt(np.clip(1.0 - nus ** 2, 0.0, 1.0))
    da, db = 2 * p.m, 2 * p.n
    g = np.zeros((da + db, da + db))
    g[:da, :da] = block_j(p.m, nus)
    g[da:, da:] = block_j(p.n, np.concatenate([nus, np.ones(p.n - p.m)]))
    for k, mu in enumerate(mus):
        g[2 * k:2 * k + 2, da + 2 * k:da + 2 * k + 2] = mu * Z2
        g[da + 2 * k:da + 2 * k + 2, 2 * k:2 * k + 2] = -mu * Z2
    return g


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Local rotations taking ``gamma`` to canonical form.

    All fields refer to ``partition`` (``m <= n``); when the caller's cut had
    ``m > n`` the two sides were exchanged first and ``swapped`` is set.
    ``gamma_can`` is in A|B ordering.  Because ``o_a, o_b`` are proper
    rotations, the smallest block may carry ``nu -> -nu`` and, for odd-parity
    states, one B-side reflection; Pfaffian magnitudes are unaffected.
    """
    o_a: np.ndarray
    o_b: np.ndarray
    spectrum: np.ndarray
    gamma_can: np.ndarray
    partition: Bipartition
    swapped: bool = False


def _swap_sides(gamma, p):
    da = 2 * p.m
    perm = np.r_[np.arange(da, gamma.shape[0]), np.arange(da)]
    return gamma[np.ix_(perm, perm)]


def canonical_form(gamma, p, mu_tol=1e-9):
    gamma = np.asarray(gamma, dtype=float)
    check_pure(gamma)
    swapped = p.swapped
    if swapped:
        gamma = _swap_sides(gamma, p)
        p = p.ordered()
    m, n = p.m, p.n
    da, db = 2 * m, 2 * n
    g_aa, g_ab, g_bb = gamma[:da, :da], gamma[:da, da:], gamma[da:, da:]

    o1, _ = antisymmetric_canonical(g_aa, proper=False)
    o_a = o1.T
    g = o_a @ g_ab
    mus = np.sqrt(np.sum(g[0::2] ** 2, axis=1))

    rows = np.zeros((db, db))
    entangled = [k for k in np.argsort(-mus, kind="stable") if mus[k] > mu_tol]
    basis = []
    for k in entangled:
        for row in (g[2 * k] / mus[k], -g[2 * k + 1] / mus[k]):
            for _ in range(2):
                for b in basis:
                    row = row - (b @ row) * b
            row = row / np.linalg.norm(row)
            basis.append(row)
        rows[2 * k], rows[2 * k + 1] = basis[-2], basis[-1]

    free_slots = [k for k in range(m) if k not in set(entangled)] + list(range(m, n))
    if free_slots:
        if basis:
            q, _ = np.linalg.qr(np.array(basis).T, mode="complete")
            comp = q[:, len(basis):]
        else:
            comp = np.eye(db)
        oc, _ = antisymmetric_canonical(comp.T @ g_bb @ comp, proper=False)
        comp_rows = (comp @ oc).T
        for i, k in enumerate(free_slots):
            rows[2 * k], rows[2 * k + 1] = comp_rows[2 * i], comp_rows[2 * i + 1]
    o_b = rows

    if np.linalg.det(o_a) < 0:
        o_a[da - 1] *= -1.0
        o_b[da - 1] *= -1.0
    if np.linalg.det(o_b) < 0:
        o_b[db - 1 if n > m else db - 2] *= -1.0

    rot = local_orthogonal(o_a, o_b)
    gamma_can = antisymmetrize(rot @ gamma @ rot.T)
    spec = entanglement_spectrum(gamma, p, check=False)
    return CanonicalDecomposition(o_a, o_b, spec, gamma_can, p, swapped)


# --- local maximality along inter-block directions -------------------------

def _interblock_generators():
    gens = []
    for lo, hi in ((0, 2), (4, 6)):
        for i in (lo, lo + 1):
            for j in (hi, hi + 1):
                k = np.zeros((8, 8))
                k[i, j], k[j, i] = 1.0, -1.0
                gens.append(k)
    return gens


def interblock_objective(nu_a, nu_b, alpha):
    """``F_alpha`` on the two-block canonical state as a function of the 8 mixing angles."""
    base = canonical_gamma([nu_a, nu_b], Bipartition(2, 2))
    gens = np.array(_interblock_generators())

    def f(theta):
        rot = expm_antisymmetric(np.tensordot(theta, gens, axes=1))
        return f_alpha_bruteforce(antisymmetrize(rot @ base @ rot.T), alpha)

    return f


def _fd_hessian(f, dim, h):
    f0 = f(np.zeros(dim))
    eye = np.eye(dim)
    hess = np.zeros((dim, dim))
    for i in range(dim):
        hess[i, i] = (f(h * eye[i]) - 2.0 * f0 + f(-h * eye[i])) / h ** 2
        for j in range(i + 1, dim):
            e = h * (eye[i] + eye[j])
            d = h * (eye[i] - eye[j])
            hess[i, j] = hess[j, i] = (f(e) - f(d) - f(-d) + f(-e)) / (4.0 * h ** 2)
    return hess


def interblock_gradient(nu_a, nu_b, alpha=2, step=1e-3):
    f = interblock_objective(nu_a, nu_b, alpha)
    eye = np.eye(8)
    return np.array([(f(step * e) - f(-step * e)) / (2.0 * step) for e in eye])


def interblock_hessian(nu_a, nu_b, alpha=2, step=1e-3):
    """Eigenvalues (ascending) of the finite-difference Hessian of ``F_alpha``
    over the 8 inter-block mixing angles at the canonical point.

    The Hessian is also evaluated at ``step / 2``; a sign change between the two
    step sizes triggers a ``RuntimeWarning``.
    """
    if not 1e-4 <= step <= 1e-2:
        raise InputError("step must lie in [1e-4, 1e-2]")
    f = interblock_objective(nu_a, nu_b, alpha)
    ev = np.linalg.eigvalsh(_fd_hessian(f, 8, step))
    ev_half = np.linalg.eigvalsh(_fd_hessian(f, 8, step / 2))
    if np.any(np.sign(ev) != np.sign(ev_half)):
        warnings.warn(f"Hessian eigenvalue signs differ between step {step} and {step / 2}",
                      RuntimeWarning, stacklevel=2)
    return ev


def lp_schatten_gap(a, alpha):
    """Both sides of ``sum_ij |A_ij|**(2 alpha) <= sum_k sigma_k(A)**(2 alpha)``."""
    if alpha < 2:
        raise InputError("alpha must be >= 2")
    a = np.asarray(a, dtype=float)
    lhs = math.fsum((np.abs(a) ** (2 * alpha)).ravel())
    rhs = math.fsum(np.linalg.svd(a, compute_uv=False) ** (2 * alpha))
    return lhs, rhs
