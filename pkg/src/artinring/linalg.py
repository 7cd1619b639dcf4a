"""Exact dense linear algebra over a prime field GF(p).

Matrices are numpy integer arrays with entries reduced to [0, p).  All the
heavy routines (`rref`, `kernel_basis`, `matmul_mod`) are exact: products are
accumulated in float64 blocks whose inner dimension is capped so that every
intermediate value stays below 2**53, which keeps BLAS dgemm calls free of
rounding.  With the default prime 32003 that cap is about 8.8e6, far above
any block size used here, so elimination runs at full dgemm speed.

Row-space conventions: subspaces are stored as matrices whose *rows* span the
space, canonicalized by `rref`.  `kernel_basis(a, p)` returns rows v with
a @ v.T == 0.
"""

from __future__ import annotations

import numpy as np

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24, plenty for word-size moduli."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Descriptor for GF(p).  Carries the modulus and dtype policy."""

    def __init__(self, p: int):
        p = int(p)
        if not is_probable_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        # exact float64 envelope: a single product plus one pending entry
        # must stay below 2**53, otherwise dgemm results are rounded
        if (p - 1) ** 2 + p >= 2**53:
            raise ValueError(f"modulus {p} too large for the dense engine")
        self.p = p
        # int32 storage is safe when subtract-of-product stays in range
        self.dtype = np.int32 if p <= 46337 else np.int64
        # max inner dimension for one exact float64 dgemm
        self.gemm_cap = max(1, (2**53) // ((p - 1) ** 2))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def asarray(self, a) -> np.ndarray:
        out = np.asarray(a)
        if out.dtype == object or not np.issubdtype(out.dtype, np.integer):
            out = np.array([[int(x) for x in row] for row in a], dtype=np.int64) \
                if out.ndim == 2 else np.array([int(x) for x in a], dtype=np.int64)
        return np.mod(out, self.p).astype(self.dtype, copy=False)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=self.dtype)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact (a @ b) mod p via float64 dgemm with inner-dimension chunking."""
    m, k = a.shape
    k2, n = b.shape
    assert k == k2, (a.shape, b.shape)
    if m == 0 or n == 0 or k == 0:
        return np.zeros((m, n), dtype=a.dtype)
    cap = max(1, (2**53) // ((p - 1) ** 2))
    if k <= cap:
        c = np.dot(a.astype(np.float64), b.astype(np.float64))
        return np.mod(c, p).astype(a.dtype)
    acc = np.zeros((m, n), dtype=np.int64)
    for lo in range(0, k, cap):
        hi = min(k, lo + cap)
        c = np.dot(a[:, lo:hi].astype(np.float64), b[lo:hi].astype(np.float64))
        acc += np.mod(c, p).astype(np.int64)
        acc %= p
    return acc.astype(a.dtype)


def _inv_small(mat: np.ndarray, p: int) -> np.ndarray:
    """Invert a small k x k matrix by unblocked Gauss-Jordan."""
    k = mat.shape[0]
    work = np.concatenate(
        [np.mod(mat, p).astype(np.int64), np.eye(k, dtype=np.int64)], axis=1)
    for c in range(k):
        piv = None
        for i in range(c, k):
            if work[i, c] % p:
                piv = i
                break
        if piv is None:
            raise ZeroDivisionError("singular block in elimination")
        if piv != c:
            work[[c, piv]] = work[[piv, c]]
        work[c] = work[c] * pow(int(work[c, c]), p - 2, p) % p
        for i in range(k):
            if i != c and work[i, c]:
                work[i] = (work[i] - work[i, c] * work[c]) % p
    return work[:, k:].astype(mat.dtype)


def _reduce_f64(arr: np.ndarray, p: int) -> np.ndarray:
    """Reduce float64 integer values (|v| <= 2**53, so exactly representable)
    to [0, p).  np.mod on float64 is an order of magnitude slower than the
    int64 round-trip for large magnitudes, so go through int64."""
    return np.mod(arr.astype(np.int64), p).astype(np.float64)


def _dot_mod(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """np.dot on float64 arrays with entries in [0, p), exact, reduced mod p."""
    k = x.shape[1]
    cap = max(1, (2**53) // ((p - 1) ** 2))
    if k <= cap:
        return _reduce_f64(np.dot(x, y), p)
    acc = np.zeros((x.shape[0], y.shape[1]), dtype=np.float64)
    for lo in range(0, k, cap):
        hi = min(k, lo + cap)
        acc += _reduce_f64(np.dot(x[:, lo:hi], y[lo:hi]), p)
        acc = _reduce_f64(acc, p)
    return acc


def rref(a: np.ndarray, p: int):
    """Reduced row echelon form of `a` over GF(p).

    Returns (rank, pivots, r) where r is the rank x n matrix of nonzero RREF
    rows (unit pivot columns, zeros elsewhere in pivot columns, pivot columns
    strictly increasing).

    Left-looking blocked elimination.  The matrix is swept in column panels;
    each panel is brought up to date with one dgemm against the accumulated
    echelon rows, pivots are found by exact float64 Jordan steps inside the
    panel, and the echelon basis plus a coefficient matrix grow as pivots
    appear.  A final blocked back-substitution produces the reduced form.
    All O(m n rank) work happens inside dgemm on float64 values kept small
    enough to be exact.
    """
    a = np.asarray(a)
    if a.ndim != 2:
        raise ValueError("rref expects a 2-D array")
    if not np.issubdtype(a.dtype, np.integer):
        raise ValueError("rref expects an integer array")
    m, n = a.shape
    dtype = np.int32 if p <= 46337 else np.int64
    if m == 0 or n == 0:
        return 0, (), np.zeros((0, n), dtype=dtype)
    bw = 128
    # outer-product updates allowed before magnitudes must be reduced; for
    # moduli around 2**15 this never triggers inside a 128-wide panel
    safe_upds = max(1, (2**53 - p) // ((p - 1) ** 2))
    rmax = min(m, n)
    u = np.zeros((rmax, n), dtype=np.float64)      # echelon rows, entries in [0, p)
    cf = np.zeros((m, rmax), dtype=np.float64)     # row coefficients vs u
    avail = np.ones(m, dtype=bool)
    pivcols: list[int] = []
    segments: list[tuple[int, int]] = []           # row ranges added per panel
    r = 0
    for c0 in range(0, n, bw):
        if r == rmax:
            break
        c1 = min(c0 + bw, n)
        w = c1 - c0
        blk = np.mod(a[:, c0:c1], p).astype(np.float64)
        if r:
            blk -= _dot_mod(cf[:, :r], u[:r, c0:c1], p)
            blk = _reduce_f64(blk, p)
        blk0 = blk.copy()                          # pre-elimination panel values
        new_local: list[int] = []
        new_rows: list[int] = []
        upds = 0
        for c in range(w):
            col = _reduce_f64(blk[:, c], p)
            blk[:, c] = col
            cand = np.nonzero((col != 0) & avail)[0]
            if cand.size == 0:
                continue
            i0 = int(cand[0])
            inv = pow(int(col[i0]), p - 2, p)
            prow = _reduce_f64(_reduce_f64(blk[i0, c:], p) * inv, p)
            blk[i0, c:] = prow
            colv = col.copy()
            colv[i0] = 0.0
            nz = np.nonzero(colv)[0]
            if nz.size:
                blk[nz, c:] -= np.outer(colv[nz], prow)
                upds += 1
                if upds >= safe_upds:
                    # keep accumulated magnitudes below 2**53
                    blk = _reduce_f64(blk, p)
                    upds = 0
            avail[i0] = False
            new_local.append(c)
            new_rows.append(i0)
            if r + len(new_local) == rmax:
                break
        k = len(new_local)
        if k == 0:
            continue
        # coefficients of every row against the new echelon rows
        cf[:, r:r + k] = blk0[:, new_local]
        # assemble the k new echelon rows full-width
        wk = _inv_small(blk0[np.ix_(new_rows, new_local)].astype(np.int64), p)
        u[r:r + k, c0:c1] = _reduce_f64(blk[new_rows], p)
        if c1 < n:
            trail = np.mod(a[new_rows, c1:], p).astype(np.float64)
            if r:
                trail -= _dot_mod(cf[new_rows, :r], u[:r, c1:], p)
                trail = _reduce_f64(trail, p)
            u[r:r + k, c1:] = _dot_mod(wk.astype(np.float64), trail, p)
        pivcols.extend(c0 + c for c in new_local)
        segments.append((r, r + k))
        r += k
    # back-substitution: earlier rows get reduced against later pivot rows,
    # sweeping from the right.  Panel segments are merged into groups of a
    # few hundred rows so the dgemms run with a healthy inner dimension.
    groups: list[list[tuple[int, int]]] = []
    cur: list[tuple[int, int]] = []
    size = 0
    for seg in segments:
        cur.append(seg)
        size += seg[1] - seg[0]
        if size >= 384:
            groups.append(cur)
            cur, size = [], 0
    if cur:
        groups.append(cur)
    for grp in reversed(groups):
        g0, g1 = grp[0][0], grp[-1][1]
        # reduce the group's own earlier rows against its later segments
        for rb0, rb1 in reversed(grp[1:]):
            cstart = pivcols[rb0]
            coef = np.ascontiguousarray(u[g0:rb0, pivcols[rb0:rb1]])
            if coef.any():
                block = np.ascontiguousarray(u[rb0:rb1, cstart:])
                u[g0:rb0, cstart:] -= _dot_mod(coef, block, p)
                u[g0:rb0, cstart:] = _reduce_f64(u[g0:rb0, cstart:], p)
        if g0 == 0:
            continue
        cstart = pivcols[g0]
        coef = np.ascontiguousarray(u[:g0, pivcols[g0:g1]])
        if coef.any():
            block = np.ascontiguousarray(u[g0:g1, cstart:])
            u[:g0, cstart:] -= _dot_mod(coef, block, p)
            u[:g0, cstart:] = _reduce_f64(u[:g0, cstart:], p)
    red = u[:r].astype(dtype)
    return r, tuple(pivcols), red


def rank_mod(a: np.ndarray, p: int) -> int:
    return rref(a, p)[0]


def kernel_basis(a: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {v : a @ v.T == 0}, in RREF form, (n - rank) x n."""
    a = np.asarray(a)
    m, n = a.shape
    r, piv, red = rref(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    k = np.zeros((len(free), n), dtype=red.dtype if r else (np.int32 if p <= 46337 else np.int64))
    for t, c in enumerate(free):
        k[t, c] = 1
    if r and free:
        k[:, list(piv)] = np.mod(-red[:, free].T, p)
    return k


def nf_against(red: np.ndarray, pivots, v: np.ndarray, p: int) -> np.ndarray:
    """Reduce rows of v modulo the row space of the RREF matrix `red`.

    The result has zeros at every pivot column; it is zero iff the row lies
    in the span.
    """
    v = np.mod(np.asarray(v), p)
    if red.shape[0] == 0 or v.shape[0] == 0:
        return v.astype(red.dtype if red.size else v.dtype)
    coef = v[:, list(pivots)]
    return np.mod(v - matmul_mod(coef, red, p), p)


def in_rowspace(red: np.ndarray, pivots, v: np.ndarray, p: int) -> bool:
    return not nf_against(red, pivots, v, p).any()


def solve_right(a: np.ndarray, b: np.ndarray, p: int):
    """One solution x of a @ x = b (columns), or None if inconsistent."""
    a = np.asarray(a)
    b = np.asarray(b)
    single = b.ndim == 1
    if single:
        b = b[:, None]
    m, n = a.shape
    aug = np.concatenate([np.mod(a, p), np.mod(b, p)], axis=1).astype(np.int64)
    r, piv, red = rref(aug, p)
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for j, c in enumerate(piv):
        if c >= n:
            return None  # pivot in the augmented part: inconsistent
        x[c] = red[j, n:]
    return x[:, 0] if single else x


class QuotientProjector:
    """Coordinates in a fixed complement of `sub` inside `ambient`.

    Both spaces are given by row-span matrices.  The complement basis is
    canonical: classes of the ambient RREF rows whose pivot column is not a
    pivot column of the sub RREF.  `coords(v)` is zero exactly when v lies
    in the span of `sub`.
    """

    def __init__(self, ambient: np.ndarray, sub: np.ndarray, p: int):
        self.p = p
        ra, piva, reda = rref(ambient, p)
        rs, pivs, reds = rref(sub, p)
        if rs:
            bad = nf_against(reda, piva, reds, p)
            if bad.any():
                raise ValueError("sub is not contained in ambient")
        self.amb_red, self.amb_piv = reda, piva
        self.sub_red, self.sub_piv = reds, pivs
        pivset = set(pivs)
        self.comp_positions = [j for j, c in enumerate(piva) if c not in pivset]
        self.dim = len(self.comp_positions)

    def coords(self, v: np.ndarray) -> np.ndarray:
        """Map rows of v (ambient coordinates) to complement coordinates."""
        v = np.atleast_2d(np.asarray(v))
        p = self.p
        alpha = np.mod(v[:, list(self.amb_piv)], p) if self.amb_piv else \
            np.zeros((v.shape[0], 0), dtype=np.int64)
        if self.amb_red.shape[0]:
            resid = nf_against(self.amb_red, self.amb_piv, v, p)
            if resid.any():
                raise ValueError("vector not in ambient space")
        if self.sub_red.shape[0]:
            # sub rows in ambient-pivot coordinates; identity at sub pivots
            s_amb = np.mod(self.sub_red[:, list(self.amb_piv)], p)
            sub_pos = [list(self.amb_piv).index(c) for c in self.sub_piv]
            beta = alpha[:, sub_pos]
            alpha = np.mod(alpha - matmul_mod(beta, s_amb, p), p)
        return alpha[:, self.comp_positions]


def coords_in_quotient(ambient: np.ndarray, sub: np.ndarray, v: np.ndarray,
                       p: int) -> np.ndarray:
    return QuotientProjector(ambient, sub, p).coords(v)


def sum_rowspaces(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[0] == 0:
        return rref(b, p)[2]
    if b.shape[0] == 0:
        return rref(a, p)[2]
    return rref(np.concatenate([a, b], axis=0), p)[2]


def intersect_rowspaces(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """RREF basis of rowspace(a) & rowspace(b)."""
    if a.shape[0] == 0 or b.shape[0] == 0:
        n = a.shape[1] if a.ndim == 2 else b.shape[1]
        return np.zeros((0, n), dtype=np.int64)
    stacked = np.concatenate([a, b], axis=0)
    ker = kernel_basis(stacked.T, p)  # rows w with w @ stacked = 0
    if ker.shape[0] == 0:
        return np.zeros((0, a.shape[1]), dtype=a.dtype)
    inter = matmul_mod(ker[:, : a.shape[0]], np.mod(a, p).astype(np.int64), p)
    return rref(inter, p)[2]


def rowspaces_equal(a: np.ndarray, b: np.ndarray, p: int) -> bool:
    ra, pa, reda = rref(a, p)
    rb, pb, redb = rref(b, p)
    return ra == rb and pa == pb and np.array_equal(np.mod(reda, p), np.mod(redb, p))


class FpMatrix:
    """A matrix over GF(p) with cached echelon data.

    Thin wrapper used at module boundaries; the numeric kernels above do the
    work on raw arrays.
    """

    def __init__(self, field: PrimeField, data):
        self.field = field
        self.a = field.asarray(data)
        self._ech = None

    @property
    def shape(self):
        return self.a.shape

    def _echelon(self):
        if self._ech is None:
            self._ech = rref(self.a, self.field.p)
        return self._ech

    @property
    def rank(self) -> int:
        return self._echelon()[0]

    @property
    def pivots(self):
        return self._echelon()[1]

    def rref(self) -> "FpMatrix":
        return FpMatrix(self.field, self._echelon()[2])

    def kernel(self) -> "FpMatrix":
        return FpMatrix(self.field, kernel_basis(self.a, self.field.p))

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        assert self.field == other.field
        return FpMatrix(self.field, matmul_mod(self.a, other.a, self.field.p))

    def __eq__(self, other):
        return (isinstance(other, FpMatrix) and self.field == other.field
                and self.a.shape == other.a.shape
                and np.array_equal(self.a, other.a))

    def __repr__(self):
        return f"FpMatrix(p={self.field.p}, shape={self.a.shape})"
