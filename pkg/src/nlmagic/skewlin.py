"""Skew-symmetric and special-orthogonal linear algebra.

Covariance matrices and single-particle Hamiltonians are real antisymmetric
``2L x 2L`` arrays; Gaussian unitaries act on them through ``SO(2L)``.  Only
magnitudes of Pfaffians are ever needed downstream, so principal minors are
evaluated as determinants (``Pf(A)**2 == det(A)``).
"""
import numpy as np
import scipy.linalg

from .errors import InputError

ANTISYM_TOL = 1e-12
ORTHO_TOL = 1e-10

J2 = np.array([[0.0, 1.0], [-1.0, 0.0]])
Z2 = np.array([[1.0, 0.0], [0.0, -1.0]])


def antisymmetrize(m):
    m = np.asarray(m, dtype=float)
    return 0.5 * (m - m.T)


def as_skew(m, tol=ANTISYM_TOL):
    """Validate ``m`` as an even-dimensional antisymmetric matrix and return its antisymmetric part."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] % 2:
        raise InputError(f"expected an even dimension, got {m.shape[0]}")
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    if m.size and np.max(np.abs(m + m.T)) > tol * scale:
        raise InputError("matrix is not antisymmetric")
    return antisymmetrize(m)


def is_special_orthogonal(o, tol=ORTHO_TOL):
    o = np.asarray(o, dtype=float)
    n = o.shape[0]
    return (np.allclose(o @ o.T, np.eye(n), atol=tol, rtol=0)
            and abs(np.linalg.det(o) - 1.0) < 1e-8)


def direct_sum(*blocks):
    return scipy.linalg.block_diag(*blocks)


def block_j(n_blocks, signs=None):
    """``(+)_k s_k J`` with ``J = [[0, 1], [-1, 0]]``."""
    signs = np.ones(n_blocks) if signs is None else np.asarray(signs, dtype=float)
    out = np.zeros((2 * n_blocks, 2 * n_blocks))
    idx = np.arange(n_blocks)
    out[2 * idx, 2 * idx + 1] = signs
    out[2 * idx + 1, 2 * idx] = -signs
    return out


def principal_minor_det(m, support):
    """Determinant of the principal submatrix of ``m`` on ``support``.

    Odd supports give 0 (odd antisymmetric minors vanish) and the empty support gives 1.
    """
    m = np.asarray(m, dtype=float)
    idx = np.asarray(sorted(support), dtype=int)
    if idx.size and (idx[0] < 0 or idx[-1] >= m.shape[0]):
        raise InputError(f"support {list(idx)} out of range for dimension {m.shape[0]}")
    if np.unique(idx).size != idx.size:
        raise InputError("support indices must be distinct")
    if idx.size == 0:
        return 1.0
    if idx.size % 2:
        return 0.0
    return float(np.linalg.det(m[np.ix_(idx, idx)]))


def antisymmetric_canonical(m, proper=True):
    """Real canonical form ``m = O (+)_k eps_k J O^T``.

    Returns ``(O, eps)`` with ``|eps_k|`` sorted in descending order.  With
    ``proper=False`` every ``eps_k >= 0`` and ``O`` may be a reflection.  With
    ``proper=True`` (default) ``det O = +1``; if ``m`` is nonsingular with a
    negative Pfaffian this forces the smallest ``eps_k`` to be negative, since
    ``Pf(m) = det(O) * prod(eps)``.
    """
    m = antisymmetrize(m)
    n = m.shape[0]
    if n % 2:
        raise InputError("antisymmetric_canonical needs an even dimension")
    if n == 0:
        return np.eye(0), np.zeros(0)
    t, q = scipy.linalg.schur(m, output="real")

    pairs = []      # (eps, col_i, col_j)
    singles = []    # columns of 1x1 (zero) blocks
    i = 0
    while i < n:
        if i + 1 < n and t[i + 1, i] != 0.0:
            b = 0.5 * (t[i, i + 1] - t[i + 1, i])
            if b >= 0:
                pairs.append((b, i, i + 1))
            else:
                pairs.append((-b, i + 1, i))
            i += 2
        else:
            singles.append(i)
            i += 1
    for a, b in zip(singles[0::2], singles[1::2]):
        pairs.append((0.0, a, b))

    # stable sort keeps the original subspace order among ties
    pairs.sort(key=lambda p: -p[0])
    cols = [c for _, ci, cj in pairs for c in (ci, cj)]
    o = q[:, cols]
    eps = np.array([p[0] for p in pairs])

    if proper and np.linalg.det(o) < 0:
        o[:, -1] *= -1.0
        eps[-1] = -eps[-1] if eps[-1] != 0.0 else 0.0
    return o, eps


def expm_antisymmetric(k, s=1.0):
    """``exp(s K)`` for antisymmetric ``K``; an element of ``SO(dim)``."""
    k = antisymmetrize(k)
    if s == 0:
        return np.eye(k.shape[0])
    return scipy.linalg.expm(s * k)


def haar_special_orthogonal(rng, dim):
    """Haar-distributed element of ``SO(dim)`` from a sign-corrected QR factorization."""
    if dim < 2:
        raise InputError("haar_special_orthogonal needs dim >= 2")
    z = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_antisymmetric(rng, dim):
    """``(Q - Q^T) / 2`` for a standard-normal ``Q``."""
    q = rng.standard_normal((dim, dim))
    return 0.5 * (q - q.T)
