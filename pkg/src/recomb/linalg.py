"""Exact integer and rational linear algebra.

Everything here is exact: row canonical form over the rationals, canonical
integer nullspace bases, Hermite normal form with a unimodular transform,
integer LLL lattice reduction, and an incremental mod-p rank accumulator.

The mod-p accumulator is the only numpy consumer; it stores residues in
float64 so reductions run through BLAS, which is exact here because every
intermediate product is bounded by (p-1)^2 * width << 2^53.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy import sparse as _sparse


class DependentRowsError(ValueError):
    """Input rows are linearly dependent where independence is required."""


# ---------------------------------------------------------------------------
# small matrix helpers (lists of python ints)

def transpose(rows):
    return [list(col) for col in zip(*rows)]


def squared_norm(v) -> int:
    return sum(int(x) * int(x) for x in v)


def sort_vectors_by_norm(vectors):
    """Sort by squared norm; ties break lexicographically on the entries."""
    return sorted((list(map(int, v)) for v in vectors),
                  key=lambda v: (squared_norm(v), v))


def int_matmul(A, B):
    """Exact product of integer matrices; numpy fast path when safe."""
    a = np.asarray(A, dtype=object)
    b = np.asarray(B, dtype=object)
    inner = a.shape[1]
    try:
        amax = max((abs(int(x)) for row in A for x in row), default=0)
        bmax = max((abs(int(x)) for row in B for x in row), default=0)
        if amax * bmax * inner < 2 ** 62:
            return (np.asarray(A, dtype=np.int64) @
                    np.asarray(B, dtype=np.int64)).tolist()
    except OverflowError:
        pass
    return (a @ b).tolist()


def det_bareiss(M) -> int:
    """Exact determinant by fraction-free elimination (for modest sizes)."""
    a = [[int(x) for x in row] for row in M]
    n = len(a)
    if n == 0:
        return 1
    assert all(len(row) == n for row in a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        for i in range(k + 1, n):
            rik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (pk * row_i[j] - rik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return sign * a[-1][-1]


# ---------------------------------------------------------------------------
# row canonical form over Q

class RcfResult(NamedTuple):
    rows: list          # reduced row echelon form, Fractions
    rank: int
    pivots: list        # pivot column per pivot row


def rcf(M) -> RcfResult:
    """Unique reduced row echelon form over the rationals."""
    rows = [[x if isinstance(x, Fraction) else Fraction(int(x)) for x in row]
            for row in M]
    if not rows:
        return RcfResult([], 0, [])
    ncols = len(rows[0])
    r = 0
    pivots = []
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        rr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                rows[i] = [x - f * y for x, y in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return RcfResult(rows, r, pivots)


def rcf_nullspace(M) -> list:
    """Canonical integer nullspace basis from the RCF.

    One vector per free column: free coordinate set to 1, pivots back-solved,
    then the vector is scaled by the LCM of its denominators and divided by
    the GCD of its entries.  Returned in free-column order.
    """
    R = rcf(M)
    ncols = len(R.rows[0]) if R.rows else 0
    pivset = set(R.pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(R.pivots):
            v[pc] = -R.rows[i][f]
        lcm = 1
        for x in v:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        w = [int(x * lcm) for x in v]
        g = 0
        for x in w:
            g = math.gcd(g, x)
        if g > 1:
            w = [x // g for x in w]
        basis.append(w)
    return basis


# ---------------------------------------------------------------------------
# Hermite normal form

class HnfResult(NamedTuple):
    h: list             # m x n HNF
    u: list             # m x m unimodular transform, u @ M = h
    rank: int
    pivots: list        # pivot column per nonzero row
    det_sign: int       # sign of det(u); |det(u)| = 1 by construction


def hnf_with_transform(M) -> HnfResult:
    """Row HNF of an integer matrix with a unimodular transform.

    H satisfies: zeros left of each pivot, pivots >= 1, entries above a pivot
    reduced into [0, pivot), zero rows at the bottom.  H is unique; U is not.
    Above-pivot entries are reduced as soon as each pivot settles, which
    keeps the transform entries small.
    """
    h = [[int(x) for x in row] for row in M]
    m = len(h)
    n = len(h[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    sign = 1
    r = 0
    pivots = []
    for c in range(n):
        # remainder loop: shrink entries in column c below row r until one is left
        while True:
            live = [i for i in range(r, m) if h[i][c] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(h[i][c]))
            if i0 != r:
                h[r], h[i0] = h[i0], h[r]
                u[r], u[i0] = u[i0], u[r]
                sign = -sign
            if len(live) == 1:
                break
            a = h[r][c]
            for i in range(r + 1, m):
                if h[i][c] == 0:
                    continue
                q = h[i][c] // a  # floor keeps remainders in [0, |a|)
                if q:
                    hi, hr = h[i], h[r]
                    h[i] = [x - q * y for x, y in zip(hi, hr)]
                    ui, ur = u[i], u[r]
                    u[i] = [x - q * y for x, y in zip(ui, ur)]
        if r < m and h[r][c]:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
                sign = -sign
            a = h[r][c]
            for k in range(r):
                q = h[k][c] // a
                if q:
                    hk, hr = h[k], h[r]
                    h[k] = [x - q * y for x, y in zip(hk, hr)]
                    uk, ur = u[k], u[r]
                    u[k] = [x - q * y for x, y in zip(uk, ur)]
            pivots.append(c)
            r += 1
            if r == m:
                break
    return HnfResult(h, u, r, pivots, sign)


def hnf_rows(M) -> list:
    """Nonzero rows of the HNF (no transform); canonical for lattice tests."""
    h = [[int(x) for x in row] for row in M]
    m = len(h)
    n = len(h[0]) if m else 0
    r = 0
    for c in range(n):
        while True:
            live = [i for i in range(r, m) if h[i][c] != 0]
            if not live:
                break
            i0 = min(live, key=lambda i: abs(h[i][c]))
            if i0 != r:
                h[r], h[i0] = h[i0], h[r]
            if len(live) == 1:
                break
            a = h[r][c]
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // a
                    if q:
                        hi, hr = h[i], h[r]
                        h[i] = [x - q * y for x, y in zip(hi, hr)]
        if r < m and h[r][c]:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
            a = h[r][c]
            for k in range(r):
                q = h[k][c] // a
                if q:
                    hk, hr = h[k], h[r]
                    h[k] = [x - q * y for x, y in zip(hk, hr)]
            r += 1
            if r == m:
                break
    return h[:r]


def nullspace_lattice(M) -> list:
    """Lattice basis of {x : M x = 0} over Z.

    Bottom rows of the transform U with U M^t = HNF(M^t); every integer
    nullspace vector is an integer combination of these rows.
    """
    res = hnf_with_transform(transpose(M))
    return [list(row) for row in res.u[res.rank:]]


def lattices_equal(A, B) -> bool:
    """Same integer row span (HNF is a lattice invariant)."""
    return hnf_rows(A) == hnf_rows(B)


def lattice_coordinates(basis, v, hnf=None):
    """Coordinates of v in the lattice spanned by basis rows, or None.

    Works through the HNF of the basis, so it decides membership in the
    lattice (integer combinations), not just the rational span.  Pass a
    precomputed `hnf_rows(basis)` as `hnf` when testing many vectors.
    """
    H = hnf_rows(basis) if hnf is None else hnf
    v = [int(x) for x in v]
    piv = []
    for row in H:
        j = next(k for k, x in enumerate(row) if x)
        piv.append(j)
    coords = []
    for row, j in zip(H, piv):
        if v[j] % row[j] != 0:
            return None
        q = v[j] // row[j]
        coords.append(q)
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    if any(v):
        return None
    return coords


def lattice_contains(basis, v, hnf=None) -> bool:
    return lattice_coordinates(basis, v, hnf) is not None


def rational_span_equal(A, B) -> bool:
    """Equal row spans over Q, by a mutual rank test.

    Ranks come from integer HNFs: HNF rows are independent over Q, so the
    nonzero-row count is the rational rank, without Fraction arithmetic.
    """
    ra = len(hnf_rows(A))
    rb = len(hnf_rows(B))
    if ra != rb:
        return False
    return len(hnf_rows(list(A) + list(B))) == ra


# ---------------------------------------------------------------------------
# integer LLL

def _lll_initialize(b):
    """Integer Gram-Schmidt data: d[i] = det Gram(b1..bi), lam scaled mu."""
    k = len(b)
    d = [1] * (k + 1)
    lam = [[0] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1):
            u = sum(x * y for x, y in zip(b[i], b[j]))
            for s in range(j):
                u = (d[s + 1] * u - lam[i][s] * lam[j][s]) // d[s]
            if j < i:
                lam[i][j] = u
            else:
                d[i + 1] = u
                if u <= 0:
                    raise DependentRowsError("rows are linearly dependent")
    return d, lam


def lll_reduce(basis, delta=(3, 4)) -> list:
    """LLL-reduced basis of the same lattice, in exact integer arithmetic.

    delta is the Lovasz parameter as an integer pair (num, den); the default
    3/4 gives the classical guarantees.  Raises DependentRowsError when the
    input rows are dependent.
    """
    b = [[int(x) for x in row] for row in basis]
    k = len(b)
    if k <= 1:
        return [row[:] for row in b]
    num, den = delta
    d, lam = _lll_initialize(b)

    def red(i, j):
        if 2 * abs(lam[i][j]) > d[j + 1]:
            q = (2 * lam[i][j] + d[j + 1]) // (2 * d[j + 1])
            bi, bj = b[i], b[j]
            b[i] = [x - q * y for x, y in zip(bi, bj)]
            lam[i][j] -= q * d[j + 1]
            li, lj = lam[i], lam[j]
            for s in range(j):
                li[s] -= q * lj[s]

    kk = 1
    while kk < k:
        red(kk, kk - 1)
        lam_k = lam[kk][kk - 1]
        if den * (d[kk + 1] * d[kk - 1] + lam_k * lam_k) < num * d[kk] * d[kk]:
            # swap b[kk-1], b[kk] and patch the Gram data
            b[kk - 1], b[kk] = b[kk], b[kk - 1]
            for s in range(kk - 1):
                lam[kk - 1][s], lam[kk][s] = lam[kk][s], lam[kk - 1][s]
            B = (d[kk - 1] * d[kk + 1] + lam_k * lam_k) // d[kk]
            for i in range(kk + 1, k):
                t = lam[i][kk]
                lam[i][kk] = (d[kk + 1] * lam[i][kk - 1] - lam_k * t) // d[kk]
                lam[i][kk - 1] = (B * t + lam_k * lam[i][kk]) // d[kk + 1]
            d[kk] = B
            kk = max(kk - 1, 1)
        else:
            for j in range(kk - 2, -1, -1):
                red(kk, j)
            kk += 1
    return b


def is_lll_reduced(basis, delta=(3, 4)) -> bool:
    """Definition check with exact rational Gram-Schmidt (test oracle)."""
    b = [[Fraction(int(x)) for x in row] for row in basis]
    k = len(b)
    star = []
    mu = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        v = list(b[i])
        for j in range(i):
            denom = sum(x * x for x in star[j])
            mu[i][j] = sum(x * y for x, y in zip(b[i], star[j])) / denom
            v = [x - mu[i][j] * y for x, y in zip(v, star[j])]
        star.append(v)
    dlt = Fraction(delta[0], delta[1])
    for i in range(k):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for i in range(1, k):
        lhs = sum(x * x for x in star[i])
        rhs = (dlt - mu[i][i - 1] ** 2) * sum(x * x for x in star[i - 1])
        if lhs < rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# incremental rank over F_p

class ModularRankAccumulator:
    """Incremental reduced echelon form mod p.

    Rows are reduced against the accumulated basis; a row either gets
    absorbed (already in the span) or raises the rank by one.  The basis
    keeps its pivot columns normalized to the identity, so reducing a row is
    a single coefficient-gather plus one BLAS product.  Freshly inserted rows
    are parked in a pending block and merged in batches, which keeps pivot
    maintenance in matrix-matrix products.
    """

    def __init__(self, width: int, p: int = 101, merge_block: int = 256):
        if p < 2 or any(p % q == 0 for q in range(2, min(p, int(p ** 0.5) + 2))):
            raise ValueError(f"p = {p} is not prime")
        if (p - 1) ** 2 * max(width, 1) >= 2 ** 53:
            raise ValueError("width too large for exact float64 products")
        self.width = width
        self.p = p
        self.merge_block = merge_block
        self._cap = 256
        self._basis = np.zeros((self._cap, width), dtype=np.float64)
        self._r0 = 0
        self._pivcols = np.empty(0, dtype=np.int64)
        self._pcol2row = np.full(width, -1, dtype=np.int64)
        self._lrows: list = []
        self._lpivs: list = []

    # -- public ------------------------------------------------------------

    def rank(self) -> int:
        return self._r0 + len(self._lrows)

    def add_row(self, row) -> bool:
        """Reduce one dense row; True iff the rank increased."""
        v = np.asarray(row, dtype=np.float64) % self.p
        v = self._reduce(v)
        if not v.any():
            return False
        self._insert(v)
        self._maybe_merge()
        return True

    def add_sparse(self, cols, vals) -> bool:
        """Reduce one row given as (columns, values); True iff rank grew."""
        v = np.zeros(self.width, dtype=np.float64)
        v[list(cols)] = [x % self.p for x in vals]
        rows_hit = self._pcol2row[list(cols)]
        mask = rows_hit >= 0
        if mask.any():
            coeffs = v[np.asarray(list(cols))[mask]]
            v -= coeffs @ self._basis[rows_hit[mask]]
            v %= self.p
        v = self._reduce_pending(v)
        if not v.any():
            return False
        self._insert(v)
        self._maybe_merge()
        return True

    def add_batch(self, rows) -> int:
        """Reduce a dense block of rows; returns the number of new pivots."""
        X = np.asarray(rows, dtype=np.float64) % self.p
        if X.ndim == 1:
            X = X[None, :]
        X = self._reduce_block(X)
        return self._absorb_survivors(X)

    def add_sparse_batch(self, row_idx, col_idx, vals, nrows: int) -> int:
        """Reduce nrows sparse rows given in COO form; returns new pivots."""
        p = self.p
        row_idx = np.asarray(row_idx, dtype=np.int64)
        col_idx = np.asarray(col_idx, dtype=np.int64)
        vals = np.asarray(vals, dtype=np.float64) % p
        X = np.zeros((nrows, self.width), dtype=np.float64)
        X[row_idx, col_idx] = vals
        hit = self._pcol2row[col_idx]
        mask = hit >= 0
        if mask.any() and self._r0:
            C = _sparse.csr_matrix(
                (vals[mask], (row_idx[mask], hit[mask])),
                shape=(nrows, self._r0))
            X -= C @ self._basis[:self._r0]
            X %= p
        if self._lrows:
            L = np.vstack(self._lrows)
            X -= X[:, self._lpivs] @ L
            X %= p
        return self._absorb_survivors(X)

    def flush(self) -> None:
        self._merge()

    def echelon(self) -> np.ndarray:
        """Copy of the accumulated reduced echelon basis (rank x width)."""
        self._merge()
        return self._basis[:self._r0].copy()

    def pivot_columns(self) -> list:
        self._merge()
        return [int(c) for c in self._pivcols]

    # -- internals -----------------------------------------------------------

    def _reduce(self, v: np.ndarray) -> np.ndarray:
        if self._r0:
            coeffs = v[self._pivcols]
            if coeffs.any():
                v = (v - coeffs @ self._basis[:self._r0]) % self.p
        return self._reduce_pending(v)

    def _reduce_pending(self, v: np.ndarray) -> np.ndarray:
        if self._lrows:
            L = np.vstack(self._lrows)
            coeffs = v[self._lpivs]
            if coeffs.any():
                v = (v - coeffs @ L) % self.p
        return v

    def _reduce_block(self, X: np.ndarray) -> np.ndarray:
        p = self.p
        if self._r0:
            chunk = max(1, (1 << 24) // max(self.width, 1))
            for lo in range(0, X.shape[0], chunk):
                sl = X[lo:lo + chunk]
                sl -= sl[:, self._pivcols] @ self._basis[:self._r0]
                sl %= p
        if self._lrows:
            L = np.vstack(self._lrows)
            X -= X[:, self._lpivs] @ L
            X %= p
        return X

    def _absorb_survivors(self, X: np.ndarray) -> int:
        alive = np.flatnonzero(X.any(axis=1))
        if alive.size == 0:
            return 0
        rows, pivs = self._echelonize_local(X[alive])
        if not rows:
            return 0
        # older pending rows must be cleared on the new pivots
        if self._lrows:
            L = np.vstack(self._lrows)
            F = L[:, pivs]
            if F.any():
                L = (L - F @ np.vstack(rows)) % self.p
            self._lrows = list(L)
        self._lrows.extend(rows)
        self._lpivs.extend(pivs)
        self._maybe_merge()
        return len(rows)

    def _echelonize_local(self, X: np.ndarray):
        """RREF a block already reduced against the basis; returns rows, pivots."""
        p = self.p
        nrows = X.shape[0]
        if nrows <= 48:
            rows: list = []
            pivs: list = []
            for i in range(nrows):
                v = X[i]
                if rows:
                    coeffs = v[pivs]
                    if coeffs.any():
                        v = (v - coeffs @ np.vstack(rows)) % p
                nz = np.flatnonzero(v)
                if nz.size == 0:
                    continue
                j = int(nz[0])
                inv = pow(int(v[j]), -1, p)
                if inv != 1:
                    v = (v * inv) % p
                for s, r in enumerate(rows):
                    f = r[j]
                    if f:
                        rows[s] = (r - f * v) % p
                rows.append(v)
                pivs.append(j)
            return rows, pivs
        half = nrows // 2
        r1, p1 = self._echelonize_local(X[:half])
        Y = X[half:]
        if r1:
            Y = (Y - Y[:, p1] @ np.vstack(r1)) % p
        alive = np.flatnonzero(Y.any(axis=1))
        r2, p2 = self._echelonize_local(Y[alive]) if alive.size else ([], [])
        if r1 and r2:
            R1 = np.vstack(r1)
            F = R1[:, p2]
            if F.any():
                R1 = (R1 - F @ np.vstack(r2)) % p
            r1 = list(R1)
        return r1 + r2, p1 + p2

    def _insert(self, v: np.ndarray) -> None:
        p = self.p
        j = int(np.flatnonzero(v)[0])
        inv = pow(int(v[j]), -1, p)
        if inv != 1:
            v = (v * inv) % p
        for s, r in enumerate(self._lrows):
            f = r[j]
            if f:
                self._lrows[s] = (r - f * v) % p
        self._lrows.append(v)
        self._lpivs.append(j)

    def _maybe_merge(self) -> None:
        if len(self._lrows) >= self.merge_block:
            self._merge()

    def _merge(self) -> None:
        if not self._lrows:
            return
        p = self.p
        L = np.vstack(self._lrows)
        s = L.shape[0]
        self._ensure_capacity(self._r0 + s)
        if self._r0:
            chunk = max(1, (1 << 24) // max(self.width, 1))
            for lo in range(0, self._r0, chunk):
                sl = self._basis[lo:min(lo + chunk, self._r0)]
                F = sl[:, self._lpivs]
                if F.any():
                    sl -= F @ L
                    sl %= p
        self._basis[self._r0:self._r0 + s] = L
        self._pcol2row[self._lpivs] = np.arange(self._r0, self._r0 + s)
        self._pivcols = np.concatenate(
            [self._pivcols, np.asarray(self._lpivs, dtype=np.int64)])
        self._r0 += s
        self._lrows = []
        self._lpivs = []

    def _ensure_capacity(self, need: int) -> None:
        if need <= self._cap:
            return
        cap = self._cap
        while cap < need:
            cap *= 2
        cap = min(cap, max(self.width, need))
        fresh = np.zeros((cap, self.width), dtype=np.float64)
        fresh[:self._r0] = self._basis[:self._r0]
        self._basis = fresh
        self._cap = cap


def modular_rank(M, p: int = 101) -> int:
    """Rank of an integer matrix mod p via the accumulator."""
    M = np.asarray(M)
    if M.size == 0:
        return 0
    acc = ModularRankAccumulator(M.shape[1], p)
    acc.add_batch(M)
    return acc.rank()
