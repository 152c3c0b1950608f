"""Dense exact linear algebra over a prime field GF(p).

Matrices are plain numpy int64 arrays with entries in [0, p).  Gaussian
elimination is blocked: panels are factored recursively and trailing
blocks are updated with float64 BLAS matmuls, which stay exact because
p is machine-word sized (inner_dim * (p-1)^2 < 2^53 for every matrix
size this package can hold in memory).

Pivoting always selects the topmost row with a nonzero entry, so every
routine here is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_PANEL = 32  # base width of the unblocked elimination panel


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """GF(p) for a prime p, certified by trial division at construction."""

    p: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if self.p >= 2**20:
            raise ValueError("modulus too large for exact float64 matmul path")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def neg(self, a: int) -> int:
        return (-a) % self.p


def as_matrix(rows, p, width=None):
    """Coerce nested lists / arrays to a reduced int64 matrix mod p."""
    A = np.array(rows, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, width or 0)
    if A.size == 0:
        shape = (A.shape[0] if A.ndim == 2 else 0, width or (A.shape[1] if A.ndim == 2 else 0))
        return np.zeros(shape, dtype=np.int64)
    return A % p


def mod_matmul(A, B, p):
    """Exact A @ B mod p through float64 BLAS."""
    if A.shape[0] == 0 or B.shape[1] == 0 or A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    # exactness: inner * (p-1)^2 must stay below 2^53
    assert A.shape[1] * (p - 1) * (p - 1) < 2**53
    C = np.asarray(A, dtype=np.float64) @ np.asarray(B, dtype=np.float64)
    C = C.astype(np.int64)
    C %= p  # integer remainder: much faster than float fmod
    return C


def _invert_unit_lower(L, p):
    """Inverse of a unit lower-triangular matrix mod p."""
    k = L.shape[0]
    X = np.eye(k, dtype=np.int64)
    for b in range(k - 1):
        col = L[b + 1:, b]
        if col.any():
            X[b + 1:, :] = (X[b + 1:, :] - np.outer(col, X[b, :])) % p
    return X


def _invert_upper(U, p):
    """Inverse of an upper-triangular matrix with unit-normalizable diagonal mod p."""
    k = U.shape[0]
    X = np.eye(k, dtype=np.int64)
    for b in range(k - 1, -1, -1):
        inv = pow(int(U[b, b]), p - 2, p)
        X[b, :] = X[b, :] * inv % p
        row = U[0:b, b]
        if row.any():
            X[0:b, :] = (X[0:b, :] - np.outer(row, X[b, :])) % p
    return X


def _factor_panel(A, p, r0, c0, c1, pivots):
    """Recursive echelon factorization of columns [c0, c1) on rows [r0, m).

    Multipliers are stored below the pivots (LAPACK style) and zeroed by
    the caller; returns the number of pivots found in this column range.
    Intended for narrow panels: triangular solves stay panel-sized.
    """
    m = A.shape[0]
    width = c1 - c0
    if r0 >= m or width <= 0:
        return 0
    if width <= _PANEL:
        k = 0
        for c in range(c0, c1):
            rr = r0 + k
            if rr >= m:
                break
            col = A[rr:m, c]
            nz = np.nonzero(col)[0]
            if nz.size == 0:
                continue
            pr = rr + int(nz[0])
            if pr != rr:
                A[[rr, pr], :] = A[[pr, rr], :]
            inv = pow(int(A[rr, c]), p - 2, p)
            if rr + 1 < m:
                mult = A[rr + 1: m, c] * inv % p
                if c + 1 < c1:
                    A[rr + 1: m, c + 1: c1] = (
                        A[rr + 1: m, c + 1: c1] - mult[:, None] * A[rr, c + 1: c1]
                    ) % p
                A[rr + 1: m, c] = mult  # stash multipliers for deferred updates
            pivots.append(c)
            k += 1
        return k
    mid = (c0 + c1) // 2
    n_before = len(pivots)
    k1 = _factor_panel(A, p, r0, c0, mid, pivots)
    if k1:
        _apply_pending(A, p, r0, pivots[n_before:], mid, c1)
    k2 = _factor_panel(A, p, r0 + k1, mid, c1, pivots)
    return k1 + k2


def _apply_pending(A, p, r0, pcs, c0, c1):
    """Push the stored panel multipliers into trailing columns [c0, c1)."""
    m = A.shape[0]
    k = len(pcs)
    if k == 0 or c0 >= c1:
        return
    L11 = np.eye(k, dtype=np.int64)
    for b in range(k):
        L11[b + 1:, b] = A[r0 + b + 1: r0 + k, pcs[b]]
    L11inv = _invert_unit_lower(L11, p)
    A[r0: r0 + k, c0:c1] = mod_matmul(L11inv, A[r0: r0 + k, c0:c1], p)
    if r0 + k < m:
        L21 = A[r0 + k: m, pcs]
        if L21.any():
            A[r0 + k: m, c0:c1] = (
                A[r0 + k: m, c0:c1] - mod_matmul(L21, A[r0: r0 + k, c0:c1], p)
            ) % p


_OUTER = 256  # width of the outer elimination block


def row_echelon(A, p):
    """Row echelon form mod p.  Returns (R, pivot_columns)."""
    R = np.array(A, dtype=np.int64) % p
    if R.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    c = 0
    while c < n and r < m:
        c2 = min(c + _OUTER, n)
        before = len(pivots)
        _factor_panel(R, p, r, c, c2, pivots)
        k = len(pivots) - before
        if k and c2 < n:
            _apply_pending(R, p, r, pivots[before:], c2, n)
        r += k
        c = c2
    # clear the stashed multipliers
    for b, col in enumerate(pivots):
        R[b + 1:, col] = 0
    return R, pivots


def rref(A, p):
    """Reduced row echelon form mod p (canonical).  Returns (R, pivot_columns)."""
    R, pivots = row_echelon(A, p)
    r = len(pivots)
    n = R.shape[1]
    b1 = r
    while b1 > 0:
        b0 = max(0, b1 - _PANEL)
        pcs = pivots[b0:b1]
        T = R[b0:b1, pcs]
        Tinv = _invert_upper(T, p)
        R[b0:b1, :] = mod_matmul(Tinv, R[b0:b1, :], p)
        if b0 > 0:
            coef = R[0:b0, pcs]
            if coef.any():
                R[0:b0, :] = (R[0:b0, :] - mod_matmul(coef, R[b0:b1, :], p)) % p
        b1 = b0
    if r < R.shape[0]:
        R[r:, :] = 0
    return R, pivots


def rank(A, p) -> int:
    if A.size == 0:
        return 0
    return len(row_echelon(A, p)[1])


def kernel(A, p):
    """Basis of the right kernel {v : A v = 0}, one vector per row.

    Deterministic: rows are indexed by the free columns of rref(A) in
    increasing order.
    """
    A = np.asarray(A, dtype=np.int64)
    m, n = A.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    R, pivots = rref(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    K = np.zeros((len(free), n), dtype=np.int64)
    for a, f in enumerate(free):
        K[a, f] = 1
        for b, c in enumerate(pivots):
            K[a, c] = (-int(R[b, f])) % p
    return K


def reduce_rows(V, R, pivots, p):
    """Reduce each row of V modulo the rref rows R (pivot columns `pivots`)."""
    V = np.asarray(V, dtype=np.int64) % p
    if V.size == 0 or not pivots:
        return V.copy()
    coef = V[:, pivots]
    if not coef.any():
        return V.copy()
    return (V - mod_matmul(coef, R[: len(pivots), :], p)) % p


class Subspace:
    """A subspace of GF(p)^n with a canonical rref basis.

    Two equal subspaces have identical basis matrices, so equality is
    structural.
    """

    __slots__ = ("p", "ambient_dim", "basis", "pivots")

    def __init__(self, p, ambient_dim, basis, pivots=None, _canonical=False):
        self.p = p
        self.ambient_dim = ambient_dim
        B = as_matrix(basis, p, width=ambient_dim)
        if not _canonical:
            R, piv = rref(B, p)
            B, pivots = R[: len(piv), :], piv
        self.basis = B
        self.pivots = list(pivots or [])

    @classmethod
    def from_spanning(cls, vectors, p, ambient_dim):
        return cls(p, ambient_dim, vectors)

    @classmethod
    def zero(cls, p, ambient_dim):
        return cls(p, ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64),
                   pivots=[], _canonical=True)

    @classmethod
    def full(cls, p, ambient_dim):
        return cls(p, ambient_dim, np.eye(ambient_dim, dtype=np.int64),
                   pivots=list(range(ambient_dim)), _canonical=True)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v) -> bool:
        v = as_matrix(v, self.p, width=self.ambient_dim)
        red = reduce_rows(v, self.basis, self.pivots, self.p)
        return not red.any()

    def contains_space(self, other: "Subspace") -> bool:
        if other.dim == 0:
            return True
        red = reduce_rows(other.basis, self.basis, self.pivots, self.p)
        return not red.any()

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.p == other.p
                and self.ambient_dim == other.ambient_dim
                and self.basis.shape == other.basis.shape
                and bool(np.array_equal(self.basis, other.basis)))

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.basis.tobytes()))

    def __add__(self, other: "Subspace") -> "Subspace":
        assert self.ambient_dim == other.ambient_dim
        stacked = np.vstack([self.basis, other.basis])
        return Subspace(self.p, self.ambient_dim, stacked)

    def intersect(self, other: "Subspace") -> "Subspace":
        return (self.orthogonal_complement() + other.orthogonal_complement()
                ).orthogonal_complement()

    def orthogonal_complement(self) -> "Subspace":
        """U^perp under the standard dot-product pairing."""
        if self.dim == 0:
            return Subspace.full(self.p, self.ambient_dim)
        K = kernel(self.basis, self.p)
        return Subspace(self.p, self.ambient_dim, K)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"
