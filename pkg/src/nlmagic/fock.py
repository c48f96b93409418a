"""Dense Jordan-Wigner state-vector tools for small systems.

These are brute-force references: every quantity is computed from explicit
``2**L``-dimensional operators, independently of the covariance-matrix
machinery.  Site 0 is the leftmost tensor factor; Majoranas are
``gamma_{2j} = Z..Z X_j`` and ``gamma_{2j+1} = Z..Z Y_j``, and the annihilator
is ``c_j = (gamma_{2j} + i gamma_{2j+1}) / 2`` so that ``|0..0>`` is the vacuum.
"""
from functools import lru_cache, reduce
from itertools import product

import numpy as np
import scipy.linalg

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (I2, X, Y, Z)


def _kron(ops):
    return reduce(np.kron, ops)


@lru_cache(maxsize=16)
def majoranas(L):
    out = []
    for j in range(L):
        for p in (X, Y):
            out.append(_kron([Z] * j + [p] + [I2] * (L - j - 1)))
    return tuple(out)


def annihilators(L):
    g = majoranas(L)
    return [0.5 * (g[2 * j] + 1j * g[2 * j + 1]) for j in range(L)]


def covariance_from_state(psi):
    """``Gamma_{mu nu} = -(i/2) <[gamma_mu, gamma_nu]>`` from a state vector."""
    psi = np.asarray(psi, dtype=complex)
    L = int(round(np.log2(psi.size)))
    g = majoranas(L)
    vecs = [gm @ psi for gm in g]
    gamma = np.zeros((2 * L, 2 * L))
    for a in range(2 * L):
        for b in range(a + 1, 2 * L):
            val = -1j * np.vdot(psi, g[a] @ vecs[b])
            gamma[a, b] = val.real
            gamma[b, a] = -val.real
    return gamma


def quadratic_operator(h):
    """``(i/4) sum h_{mu nu} gamma_mu gamma_nu`` as a dense matrix."""
    h = np.asarray(h, dtype=float)
    L = h.shape[0] // 2
    g = majoranas(L)
    out = np.zeros((2 ** L, 2 ** L), dtype=complex)
    for a in range(2 * L):
        for b in range(2 * L):
            if a != b and h[a, b] != 0.0:
                out += h[a, b] * (g[a] @ g[b])
    return 0.25j * out


def gaussian_state_vector(gamma):
    """State vector (up to phase) of the pure Gaussian state with covariance ``gamma``.

    It is the unique ground state of ``(i/4) sum gamma_{mu nu} gamma_mu gamma_nu``.
    """
    w, v = np.linalg.eigh(quadratic_operator(gamma))
    return v[:, 0]


def pauli_expectations(psi):
    """``<psi|P|psi>`` for every Pauli string ``P``, in ``I, X, Y, Z`` lexicographic order."""
    psi = np.asarray(psi, dtype=complex)
    L = int(round(np.log2(psi.size)))
    out = np.empty(4 ** L)
    for n, labels in enumerate(product(range(4), repeat=L)):
        phi = psi.reshape((2,) * L)
        for site, p in enumerate(labels):
            if p:
                phi = np.moveaxis(np.tensordot(PAULIS[p], phi, axes=([1], [site])), 0, site)
        out[n] = np.vdot(psi, phi.reshape(-1)).real
    return out


def pauli_sre(psi, alpha):
    """Stabilizer Renyi entropy from the full Pauli spectrum of a pure state."""
    exps = pauli_expectations(psi)
    L = int(round(np.log(exps.size) / np.log(4)))
    pi = exps ** 2 / 2 ** L
    return np.log(np.sum(pi ** alpha)) / (1.0 - alpha) - L * np.log(2.0)


def reduced_density_matrix(psi, m):
    """Reduced state of the first ``m`` qubits."""
    psi = np.asarray(psi, dtype=complex)
    L = int(round(np.log2(psi.size)))
    mat = psi.reshape(2 ** m, 2 ** (L - m))
    return mat @ mat.conj().T


def entanglement_entropy(psi, m):
    p = np.linalg.eigvalsh(reduced_density_matrix(psi, m))
    p = p[p > 1e-15]
    return float(-np.sum(p * np.log(p)))


def bdg_operator(A, B):
    """``sum A_ij c_i^dag c_j + (1/2) sum (B_ij c_i^dag c_j^dag + h.c.)`` built from fermion operators."""
    L = np.asarray(A).shape[0]
    c = annihilators(L)
    cd = [op.conj().T for op in c]
    out = np.zeros((2 ** L, 2 ** L), dtype=complex)
    for i in range(L):
        for j in range(L):
            if A[i][j] != 0:
                out += A[i][j] * (cd[i] @ c[j])
            if B[i][j] != 0:
                term = 0.5 * B[i][j] * (cd[i] @ cd[j])
                out += term + term.conj().T
    return out


def evolve_state(psi, hamiltonian, t):
    return scipy.linalg.expm(-1j * t * hamiltonian) @ psi
