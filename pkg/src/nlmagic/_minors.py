"""Pure-numpy principal-minor kernels (fallback for :mod:`nlmagic._kernels`)."""
import math
from functools import lru_cache
from itertools import combinations

import numpy as np


@lru_cache(maxsize=64)
def _supports(n, k):
    if k == 0:
        return np.zeros((1, 0), dtype=np.intp), np.zeros(1, dtype=np.int64)
    idx = np.array(list(combinations(range(n), k)), dtype=np.intp)
    masks = np.left_shift(np.int64(1), idx).sum(axis=1)
    return idx, masks


def _dets_of_size(gamma, k):
    idx, masks = _supports(gamma.shape[0], k)
    if k == 0:
        return np.ones(1), masks
    sub = gamma[idx[:, :, None], idx[:, None, :]]
    return np.linalg.det(sub), masks


def minor_power_sum(gamma, alpha):
    """Sum of ``max(det gamma|x, 0) ** alpha`` over all even supports ``x``."""
    gamma = np.ascontiguousarray(gamma, dtype=float)
    n = gamma.shape[0]
    terms = []
    for k in range(0, n + 1, 2):
        d, _ = _dets_of_size(gamma, k)
        d = d[d > 0.0]
        terms.append(d ** alpha)
    return math.fsum(np.concatenate(terms))


def minor_dets(gamma):
    """Determinants of every principal minor, indexed by bitmask (odd supports are 0)."""
    gamma = np.ascontiguousarray(gamma, dtype=float)
    n = gamma.shape[0]
    out = np.zeros(1 << n)
    for k in range(0, n + 1, 2):
        d, masks = _dets_of_size(gamma, k)
        out[masks] = d
    return out
