"""Hot loop of the Frobenius decomposition.

For every grid point k in {0..m-1}^d we need U * ceil(lambda(k) / m), reduced
modulo the torsion invariants. Two implementations with identical output: a
numba kernel and a vectorised numpy one. Set ``TORICD_NO_NUMBA=1`` to force
the numpy path.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

USE_NUMBA = njit is not None and os.environ.get("TORICD_NO_NUMBA", "") not in ("1", "true", "yes")


def _grid(d: int, m: int) -> np.ndarray:
    axes = np.meshgrid(*([np.arange(m, dtype=np.int64)] * d), indexing="ij")
    return np.stack([a.ravel() for a in axes], axis=1)


def _ceil_div(a: np.ndarray, m: int) -> np.ndarray:
    return -((-a) // m)


def frobenius_codes_numpy(lam, urows, mods, m):
    """Rows are (free coords..., torsion residues...) for each grid point."""
    lam = np.asarray(lam, dtype=np.int64)
    urows = np.asarray(urows, dtype=np.int64)
    mods = np.asarray(mods, dtype=np.int64)
    k = _grid(lam.shape[1], m)
    u = _ceil_div(k @ lam.T, m)
    w = u @ urows.T
    tors = mods > 0
    w[:, tors] = np.mod(w[:, tors], mods[tors])
    return w


if njit is not None:

    @njit(cache=True)
    def _frobenius_nb(lam, urows, mods, m):
        n, d = lam.shape
        r = urows.shape[0]
        total = m**d
        out = np.empty((total, r), dtype=np.int64)
        k = np.zeros(d, dtype=np.int64)
        u = np.empty(n, dtype=np.int64)
        for idx in range(total):
            rem = idx
            for j in range(d - 1, -1, -1):
                k[j] = rem % m
                rem //= m
            for i in range(n):
                s = 0
                for j in range(d):
                    s += lam[i, j] * k[j]
                u[i] = -((-s) // m)
            for a in range(r):
                s = 0
                for i in range(n):
                    s += urows[a, i] * u[i]
                if mods[a] > 0:
                    s %= mods[a]
                out[idx, a] = s
        return out


def frobenius_codes_numba(lam, urows, mods, m):
    if njit is None:  # pragma: no cover
        raise RuntimeError("numba is not installed")
    return _frobenius_nb(
        np.ascontiguousarray(lam, dtype=np.int64),
        np.ascontiguousarray(urows, dtype=np.int64),
        np.ascontiguousarray(mods, dtype=np.int64),
        np.int64(m),
    )


def frobenius_codes(lam, urows, mods, m):
    if USE_NUMBA:
        return frobenius_codes_numba(lam, urows, mods, m)
    return frobenius_codes_numpy(lam, urows, mods, m)


def fits_int64(lam, urows, m) -> bool:
    """Whether every intermediate value stays far below 2**63."""
    lmax = max(abs(x) for r in lam for x in r)
    umax = max(abs(x) for r in urows for x in r) if urows else 0
    n, d = len(lam), len(lam[0])
    bound = n * umax * (d * lmax * m + 1)
    return bound < 2**60
