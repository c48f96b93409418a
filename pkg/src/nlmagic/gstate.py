"""Pure fermionic Gaussian states as covariance matrices.

A state of ``L`` sites is a real antisymmetric ``2L x 2L`` array ``gamma``
with ``gamma @ gamma == -I``.  Site ``j`` owns Majoranas ``(2j, 2j+1)``, so a
contiguous cut after ``m`` sites makes ``gamma[:2m, :2m]`` the subsystem block.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, InputError
from .skewlin import antisymmetrize, block_j

PURITY_TOL = 1e-8
CLAMP_TOL = 1e-10


@dataclass(frozen=True)
class Bipartition:
    """Contiguous cut: ``A`` holds the first ``m`` sites, ``B`` the remaining ``n``."""
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InputError(f"bipartition needs m, n >= 1, got ({self.m}, {self.n})")

    @classmethod
    def cut(cls, L, m):
        return cls(int(m), int(L) - int(m))

    @classmethod
    def half(cls, L):
        return cls(L // 2, L - L // 2)

    @property
    def L(self):
        return self.m + self.n

    @property
    def ell(self):
        return self.m / self.L

    @property
    def r(self):
        return min(self.m, self.n)

    @property
    def swapped(self):
        """True when the labels must be exchanged to get ``m <= n``."""
        return self.m > self.n

    def ordered(self):
        return Bipartition(self.n, self.m) if self.swapped else self


def n_sites(gamma):
    return np.shape(gamma)[0] // 2


def purity_defect(gamma):
    gamma = np.asarray(gamma)
    return float(np.max(np.abs(gamma @ gamma + np.eye(gamma.shape[0]))))


def is_pure(gamma, tol=PURITY_TOL):
    return purity_defect(gamma) <= tol


def check_pure(gamma, tol=PURITY_TOL):
    d = purity_defect(gamma)
    if d > tol:
        raise ContractError(f"covariance matrix is not pure: max|G^2 + I| = {d:.3e}")


def vacuum(L):
    """``|0...0>``: a ``J = [[0, 1], [-1, 0]]`` block on every site."""
    if L < 1:
        raise InputError("vacuum needs L >= 1")
    return block_j(L)


def product_state(occupations):
    """Computational-basis product state; occupied sites carry ``-J``."""
    occ = np.asarray(occupations)
    return block_j(occ.size, signs=np.where(occ > 0, -1.0, 1.0))


def occupations(gamma):
    """``<c_j^dag c_j> = (1 - gamma_{2j, 2j+1}) / 2``."""
    gamma = np.asarray(gamma)
    return 0.5 * (1.0 - np.diagonal(gamma, offset=1)[0::2])


def apply_orthogonal(gamma, o):
    """Rotate the state by a Gaussian unitary: ``O gamma O^T``."""
    gamma = np.asarray(gamma, dtype=float)
    o = np.asarray(o, dtype=float)
    if o.shape != gamma.shape:
        raise InputError(f"dimension mismatch: gamma {gamma.shape}, O {o.shape}")
    return antisymmetrize(o @ gamma @ o.T)


def local_orthogonal(o_a, o_b):
    """``O_A (+) O_B`` for a contiguous cut."""
    da, db = o_a.shape[0], o_b.shape[0]
    out = np.zeros((da + db, da + db))
    out[:da, :da] = o_a
    out[da:, da:] = o_b
    return out


def collapse_pairs(svals, tol=1e-8):
    """One representative per degenerate singular-value pair, sorted descending."""
    s = np.sort(np.asarray(svals))[::-1]
    reps, partners = s[0::2], s[1::2]
    if reps.size != partners.size or np.any(np.abs(reps - partners) > tol):
        raise ContractError("singular values of an antisymmetric block are not paired")
    return reps


def _clamp_unit(nus):
    if np.any(nus > 1.0 + CLAMP_TOL) or np.any(nus < -CLAMP_TOL):
        raise ContractError(f"entanglement spectrum outside [0, 1]: {nus}")
    return np.clip(nus, 0.0, 1.0)


def entanglement_spectrum(gamma, p, check=True):
    """The ``min(m, n)`` values ``nu_k``: positive singular values of ``i gamma_AA``.

    The smaller side's block is used; both sides share the nontrivial part and
    the larger side only adds ``|n - m|`` modes with ``nu = 1``.
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.shape[0] != 2 * p.L:
        raise InputError(f"bipartition {p} does not match {gamma.shape[0] // 2} sites")
    if check:
        check_pure(gamma)
    if p.m <= p.n:
        block = gamma[:2 * p.m, :2 * p.m]
    else:
        block = gamma[2 * p.m:, 2 * p.m:]
    svals = np.linalg.svd(block, compute_uv=False)
    return _clamp_unit(collapse_pairs(svals))


def _binary_renyi(p, order):
    q = 1.0 - p
    if order == 1:
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(p > 0, -p * np.log(p), 0.0) + np.where(q > 0, -q * np.log(q), 0.0)
        return terms
    if order == 0:
        return np.where((p > 0) & (q > 0), np.log(2.0), 0.0)
    return np.log(p ** order + q ** order) / (1.0 - order)


def entanglement_entropy(nus, order=1):
    """Renyi entanglement entropy (nats) from the single-particle spectrum.

    Each mode contributes the binary entropy of ``(1 + nu_k) / 2``; ``order=1``
    is von Neumann.
    """
    if order < 0:
        raise InputError("entropy order must be >= 0")
    nus = np.clip(np.asarray(nus, dtype=float), 0.0, 1.0)
    return float(np.sum(_binary_renyi(0.5 * (1.0 + nus), order)))
