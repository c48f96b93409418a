"""Quadratic Hamiltonians, their ground states, and Gaussian dynamics.

A Hamiltonian is stored through its Majorana generator ``h``:
``H = (i/4) sum h_{mu nu} gamma_mu gamma_nu`` (+ const).  A state with
covariance ``gamma`` has energy ``-(1/4) sum h * gamma`` and evolves as
``gamma(t) = R gamma R^T`` with ``R = exp(h t)``.
"""
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import DegeneracyError, InputError
from .gstate import product_state
from .skewlin import antisymmetric_canonical, antisymmetrize, block_j, haar_special_orthogonal

BOUNDARY = ("open", "periodic")


def bdg_generator(A, B):
    """Majorana generator of ``sum A_ij c_i^dag c_j + (1/2) sum (B_ij c_i^dag c_j^dag + h.c.)``.

    ``A`` real symmetric, ``B`` real antisymmetric; the constant offset is dropped.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    L = A.shape[0]
    h = np.zeros((2 * L, 2 * L))
    h[0::2, 1::2] = A - B
    return antisymmetrize(2.0 * h)


@dataclass
class QuadraticHamiltonian:
    L: int
    h: np.ndarray
    bc: str = "open"
    params: dict = field(default_factory=dict)

    @cached_property
    def canonical(self):
        """``(O, eps)`` with ``h = O (+) eps_k J O^T`` and ``eps_k >= 0``."""
        return antisymmetric_canonical(self.h, proper=False)

    @property
    def single_particle_energies(self):
        return self.canonical[1]


def _bonds(L, bc):
    if bc not in BOUNDARY:
        raise InputError(f"boundary condition must be one of {BOUNDARY}, got {bc!r}")
    bonds = [(j, j + 1) for j in range(L - 1)]
    if bc == "periodic" and L > 2:
        bonds.append((L - 1, 0))
    return bonds


def kitaev(L, t, delta, mu, bc="periodic"):
    """``sum_j (-t c_j^dag c_{j+1} + delta c_j c_{j+1} + h.c.) - mu (c_j^dag c_j - 1/2)``."""
    if L < 2:
        raise InputError("kitaev needs L >= 2")
    A = np.zeros((L, L))
    B = np.zeros((L, L))
    np.fill_diagonal(A, -mu)
    for i, j in _bonds(L, bc):
        A[i, j] += -t
        A[j, i] += -t
        # delta c_i c_j + h.c. = delta c_j^dag c_i^dag + h.c.
        B[j, i] += delta
        B[i, j] -= delta
    return QuadraticHamiltonian(L, bdg_generator(A, B), bc,
                                dict(model="kitaev", t=t, delta=delta, mu=mu))


def xy(L, gamma_an, bc="open"):
    """``sum_j (c_j^dag c_{j+1} + gamma_an c_j^dag c_{j+1}^dag + h.c.)``.

    Identical to ``kitaev(L, -1, -gamma_an, 0, bc)``.
    """
    if L < 2:
        raise InputError("xy needs L >= 2")
    ham = kitaev(L, -1.0, -gamma_an, 0.0, bc)
    ham.params = dict(model="xy", gamma_an=gamma_an)
    return ham


def energy(ham, gamma):
    """``<H>`` of a Gaussian state, without the constant offset."""
    return -0.25 * float(np.sum(ham.h * gamma))


def ground_state(ham, zero_tol=1e-10):
    """Covariance matrix of the unique ground state of ``ham``."""
    o, eps = ham.canonical
    if eps.min() <= zero_tol:
        raise DegeneracyError(f"zero mode: smallest single-particle energy {eps.min():.3e}",
                              eps_min=float(eps.min()))
    gamma = antisymmetrize(o @ block_j(ham.L) @ o.T)
    # flipping any block raises the energy by eps_k > 0
    flipped = antisymmetrize(o @ block_j(ham.L, np.r_[-1.0, np.ones(ham.L - 1)]) @ o.T)
    assert energy(ham, gamma) <= energy(ham, flipped)
    return gamma


def ground_energy(ham):
    return -0.5 * float(np.sum(ham.single_particle_energies))


def neel(L):
    """``|1010...>``: even sites occupied."""
    if L % 2:
        raise InputError("neel needs an even number of sites")
    return product_state(np.arange(L) % 2 == 0)


def propagator(ham, t):
    """``exp(h t)`` assembled from per-block rotations by ``eps_k t``."""
    o, eps = ham.canonical
    c, s = np.cos(eps * t), np.sin(eps * t)
    rot = np.zeros_like(ham.h)
    idx = np.arange(ham.L)
    rot[2 * idx, 2 * idx] = c
    rot[2 * idx + 1, 2 * idx + 1] = c
    rot[2 * idx, 2 * idx + 1] = s
    rot[2 * idx + 1, 2 * idx] = -s
    return o @ rot @ o.T


def evolve(gamma0, ham, t):
    """Heisenberg evolution ``gamma(t) = R gamma0 R^T`` with ``R = exp(h t)``."""
    gamma0 = np.asarray(gamma0, dtype=float)
    if gamma0.shape != ham.h.shape:
        raise InputError("state and Hamiltonian dimensions differ")
    r = propagator(ham, t)
    return antisymmetrize(r @ gamma0 @ r.T)


@dataclass(frozen=True)
class CircuitConfig:
    L: int
    layers: int

    def __post_init__(self):
        if self.L % 2 or self.L < 2:
            raise InputError("brick-wall circuits need an even L >= 2")
        if self.layers < 1:
            raise InputError("layers must be >= 1")


def _rotate_groups(gamma, gates, start):
    # apply block-diagonal (+)_a gates[a] on Majoranas start .. start + 4*len(gates)
    k = gates.shape[0]
    stop = start + 4 * k
    out = gamma.copy()
    rows = out[start:stop].reshape(k, 4, -1)
    out[start:stop] = np.einsum("aij,ajc->aic", gates, rows).reshape(4 * k, -1)
    cols = out[:, start:stop].reshape(-1, k, 4)
    out[:, start:stop] = np.einsum("raj,aij->rai", cols, gates).reshape(-1, 4 * k)
    return antisymmetrize(out)


def brickwall_step(gamma, rng, parity):
    """One layer of independent Haar ``SO(4)`` gates on neighbouring site pairs.

    ``parity="even"`` acts on sites (0,1), (2,3), ...; ``"odd"`` on (1,2),
    (3,4), ... with the two end sites idle.
    """
    L = gamma.shape[0] // 2
    if L % 2:
        raise InputError("brick-wall circuits need an even L")
    if parity == "even":
        n_gates, start = L // 2, 0
    elif parity == "odd":
        n_gates, start = L // 2 - 1, 2
    else:
        raise InputError(f"parity must be 'even' or 'odd', got {parity!r}")
    if n_gates == 0:
        return np.array(gamma, dtype=float)
    gates = np.array([haar_special_orthogonal(rng, 4) for _ in range(n_gates)])
    return _rotate_groups(np.asarray(gamma, dtype=float), gates, start)


def brickwall_period(gamma, rng):
    """One circuit time unit: an even layer followed by an odd layer."""
    return brickwall_step(brickwall_step(gamma, rng, "even"), rng, "odd")
