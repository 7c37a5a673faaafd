"""Gaussian elimination over a prime field F_p on numpy integer matrices."""

from __future__ import annotations

import numpy as np


def row_reduce(mat, p: int):
    """Reduced row echelon form mod p. Returns (rref, pivot_columns)."""
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(mat, p: int) -> int:
    if np.size(mat) == 0:
        return 0
    return len(row_reduce(mat, p)[1])


def nullspace(mat, p: int) -> np.ndarray:
    """Basis (as rows) of {v : mat @ v = 0 mod p}."""
    a = np.array(mat, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    rref, pivots = row_reduce(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-rref[r, f]) % p
    return basis


def span_vectors(basis, p: int):
    """Iterate over every F_p-combination of the rows of ``basis``."""
    basis = np.array(basis, dtype=np.int64)
    k = basis.shape[0]
    if k == 0:
        yield np.zeros(basis.shape[1] if basis.ndim == 2 else 0, dtype=np.int64)
        return
    coeffs = np.zeros(k, dtype=np.int64)
    while True:
        yield (coeffs @ basis) % p
        i = 0
        while i < k:
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0
            i += 1
        if i == k:
            return
