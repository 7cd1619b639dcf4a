"""Graded Artinian quotients R = Q/I built degree by degree.

Q is the polynomial ring in e variables over GF(p) and I a homogeneous ideal
generated in degrees >= 2.  Each graded piece I_d is realized as the row
space of shifted generators inside the coordinate space of Q_d, and R_d is
coordinatized by the monomials at non-pivot columns of the RREF of I_d (the
standard monomials, chosen deterministically by the grevlex listing).

Row-vector convention throughout: elements are coordinate rows, maps act on
the right, so the matrix of x_v : R_d -> R_{d+1} has shape (dim R_d,
dim R_{d+1}) and subspaces are row spaces.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .poly import (
    HomogPoly,
    monomials,
    num_monomials,
    shift_index_map,
    variable_mono,
)


class NotArtinianError(ValueError):
    pass


class GradedQuotient:
    """Immutable bundle: Hilbert data, standard-monomial bases, normal-form
    projectors and multiplication matrices of a graded Artinian R = Q/I."""

    def __init__(self, field, e, s, t, hilbert, ideal, basis_cols, nf, mult, gens):
        self.field = field
        self.p = field.p
        self.e = e
        self.s = s
        self.t = t
        self.hilbert = tuple(hilbert)
        self._ideal = ideal          # degree -> (rank, pivots, red) in Q_d coords
        self.basis_cols = basis_cols  # degree -> tuple of standard monomial positions
        self._nf = nf                # degree -> N_d x h(d) projector matrix
        self._mult = mult            # degree -> list over variables of h(d) x h(d+1)
        self.gens = tuple(gens)

    # -- dimensions and bases -------------------------------------------------

    def dim(self, d: int) -> int:
        if 0 <= d <= self.s:
            return self.hilbert[d]
        return 0

    def length(self) -> int:
        return sum(self.hilbert)

    def std_monomials(self, d: int):
        """Standard monomials forming the chosen basis of R_d."""
        ms = monomials(self.e, d)
        return tuple(ms[i] for i in self.basis_cols[d])

    def ideal_piece(self, d: int):
        """(rank, pivots, red) of I_d inside Q_d, for 0 <= d <= s+1."""
        return self._ideal[d]

    # -- normal forms and representatives -------------------------------------

    def nf_matrix(self, d: int) -> np.ndarray:
        return self._nf[d]

    def poly_coords(self, f: HomogPoly) -> np.ndarray:
        """Coordinates of the image of f in R, in the standard basis."""
        if f.p != self.p or f.nvars != self.e:
            raise ValueError("polynomial from a different ring")
        if f.degree > self.s:
            return np.zeros(0, dtype=np.int64)
        return f.vec @ self._nf[f.degree] % self.p

    def rep_vec(self, d: int, coords) -> np.ndarray:
        """Q_d coordinate vector of the standard representative."""
        q = np.zeros(num_monomials(self.e, d), dtype=np.int64)
        q[list(self.basis_cols[d])] = np.asarray(coords, dtype=np.int64) % self.p
        return q

    def rep_poly(self, d: int, coords) -> HomogPoly:
        return HomogPoly(self.p, self.e, d, self.rep_vec(d, coords))

    # -- multiplication --------------------------------------------------------

    def mult(self, d: int, v: int) -> np.ndarray:
        """Matrix of x_v : R_d -> R_{d+1} (right action on coordinate rows)."""
        if 0 <= d <= self.s and d + 1 <= self.s:
            return self._mult[d][v]
        return np.zeros((self.dim(d), self.dim(d + 1)), dtype=np.int64)

    def mono_mult_matrix(self, d: int, mono) -> np.ndarray:
        """Matrix of multiplication by a monomial: R_d -> R_{d + deg mono}."""
        j = sum(mono)
        if d + j > self.s or d > self.s:
            return np.zeros((self.dim(d), self.dim(d + j)), dtype=np.int64)
        if j == 0:
            return np.eye(self.dim(d), dtype=np.int64)
        smap = shift_index_map(self.e, d, tuple(mono))
        rows = smap[np.array(self.basis_cols[d], dtype=np.int64)]
        return self._nf[d + j][rows, :]

    def linear_mult_matrix(self, d: int, coeffs) -> np.ndarray:
        """Multiplication by the linear form with the given variable coeffs."""
        out = np.zeros((self.dim(d), self.dim(d + 1)), dtype=np.int64)
        for v, c in enumerate(np.asarray(coeffs, dtype=np.int64) % self.p):
            if c:
                out += int(c) * self.mult(d, v)
        return out % self.p

    def poly_mult_matrix(self, d: int, f: HomogPoly) -> np.ndarray:
        """Multiplication by (the class of) f : R_d -> R_{d + deg f}."""
        out = np.zeros((self.dim(d), self.dim(d + f.degree)), dtype=np.int64)
        for mono, coeff in f.terms():
            out += coeff * self.mono_mult_matrix(d, mono)
        return out % self.p

    def __repr__(self):
        return f"GradedQuotient(p={self.p}, e={self.e}, h={self.hilbert})"


def _nf_from_rref(e, d, rank, piv, red, p):
    n = num_monomials(e, d)
    cols = tuple(c for c in range(n) if c not in set(piv))
    full = np.eye(n, dtype=np.int64)
    if rank:
        full[list(piv), :] = (full[list(piv), :] - red) % p
    return cols, full[:, list(cols)]


def build_quotient(p: int, e: int, gens, cap: int = 12) -> GradedQuotient:
    """Build R = Q/I from homogeneous generators of degree >= 2.

    Computes I_d for d = 0, 1, ... by spanning variable shifts of the
    previous piece together with the new generators, and stops at the first
    degree where I_d fills Q_d.  Raises NotArtinianError if that has not
    happened by the degree cap.
    """
    field = linalg.PrimeField(p)
    if e < 1:
        raise ValueError("need at least one variable")
    by_degree: dict[int, list[np.ndarray]] = {}
    for g in gens:
        if not isinstance(g, HomogPoly) or g.p != p or g.nvars != e:
            raise ValueError("generator from a different ring")
        if g.is_zero():
            continue
        if g.degree < 2:
            raise ValueError("generator of degree < 2")
        by_degree.setdefault(g.degree, []).append(g.vec)

    ideal = {0: (0, (), np.zeros((0, 1), dtype=np.int64)),
             1: (0, (), np.zeros((0, e), dtype=np.int64))}
    hilbert = [1, e]  # generators live in degrees >= 2, so R_1 = Q_1
    s = None
    d = 1
    while True:
        d += 1
        n = num_monomials(e, d)
        prev_rank, _, prev_red = ideal[d - 1]
        rows = []
        if prev_rank:
            for v in range(e):
                smap = shift_index_map(e, d - 1, variable_mono(e, v))
                shifted = np.zeros((prev_rank, n), dtype=np.int64)
                shifted[:, smap] = prev_red
                rows.append(shifted)
        rows.extend(vec.reshape(1, -1) for vec in by_degree.get(d, []))
        stack = np.concatenate(rows, axis=0) if rows else np.zeros((0, n), dtype=np.int64)
        rank, piv, red = linalg.rref(stack, p)
        ideal[d] = (rank, piv, red)
        h = n - rank
        if h == 0:
            s = d - 1
            break
        if d >= cap:
            raise NotArtinianError(f"not Artinian below degree cap ({cap})")
        hilbert.append(h)

    t_candidates = [dd for dd in range(1, s + 2) if ideal[dd][0] > 0]
    t = min(t_candidates) if t_candidates else s + 1

    basis_cols = {}
    nf = {}
    for dd in range(0, s + 1):
        rank, piv, red = ideal[dd]
        cols, nf_mat = _nf_from_rref(e, dd, rank, piv, red, p)
        basis_cols[dd] = cols
        nf[dd] = nf_mat
        assert len(cols) == hilbert[dd]
    mult = {}
    for dd in range(0, s):
        per_var = []
        for v in range(e):
            smap = shift_index_map(e, dd, variable_mono(e, v))
            rows = smap[np.array(basis_cols[dd], dtype=np.int64)]
            per_var.append(nf[dd + 1][rows, :])
        mult[dd] = per_var

    r = GradedQuotient(field, e, s, t, hilbert, ideal, basis_cols, nf, mult, gens)
    _audit_commuting(r)
    return r


def _audit_commuting(r: GradedQuotient):
    """Multiplication matrices must commute; cheap, done once per build."""
    for d in range(0, max(r.s - 1, 0)):
        for v in range(r.e):
            for w in range(v + 1, r.e):
                vw = r.mult(d, v) @ r.mult(d + 1, w) % r.p
                wv = r.mult(d, w) @ r.mult(d + 1, v) % r.p
                if not np.array_equal(vw, wv):
                    raise AssertionError("multiplication matrices do not commute")


def truncate(r: GradedQuotient, a: int) -> GradedQuotient:
    """The quotient R/m^a, assembled directly from R's graded data."""
    if a < 1:
        raise ValueError("truncation degree must be >= 1")
    if a > r.s:
        return r
    s2 = a - 1
    hilbert = r.hilbert[: s2 + 1]
    ideal = {d: r._ideal[d] for d in range(0, s2 + 1)}
    n_top = num_monomials(r.e, a)
    ideal[a] = (n_top, tuple(range(n_top)), np.eye(n_top, dtype=np.int64))
    basis_cols = {d: r.basis_cols[d] for d in range(0, s2 + 1)}
    nf = {d: r._nf[d] for d in range(0, s2 + 1)}
    mult = {d: r._mult[d] for d in range(0, s2)}
    t2 = min(r.t, a)
    gens = tuple(r.gens) + tuple(
        HomogPoly.monomial(r.p, r.e, m) for m in monomials(r.e, a) if a >= 2)
    return GradedQuotient(r.field, r.e, s2, t2, hilbert, ideal, basis_cols, nf, mult, gens)


class GradedSubspace:
    """Homogeneous subspace of R: one RREF row space per degree."""

    def __init__(self, r: GradedQuotient, pieces=None):
        self.r = r
        self._pieces = {}
        if pieces:
            for d, mat in pieces.items():
                self.set_piece(d, mat)

    def set_piece(self, d: int, mat):
        mat = np.asarray(mat, dtype=np.int64)
        if mat.ndim != 2 or mat.shape[1] != self.r.dim(d):
            raise ValueError("piece has the wrong ambient dimension")
        rank, piv, red = linalg.rref(mat, self.r.p)
        if rank:
            self._pieces[d] = (rank, piv, red)

    def piece(self, d: int):
        """(rank, pivots, red) with red of shape (rank, dim R_d)."""
        if d in self._pieces:
            return self._pieces[d]
        return 0, (), np.zeros((0, self.r.dim(d)), dtype=np.int64)

    def rows(self, d: int) -> np.ndarray:
        return self.piece(d)[2]

    def dim(self, d: int) -> int:
        return self.piece(d)[0]

    def total_dim(self) -> int:
        return sum(self.dim(d) for d in range(self.r.s + 1))

    def is_zero(self) -> bool:
        return not self._pieces

    def contains(self, other: "GradedSubspace") -> bool:
        for d in range(self.r.s + 1):
            rank, piv, red = self.piece(d)
            rows = other.rows(d)
            if rows.shape[0] and not linalg.in_rowspace(red, piv, rows, self.r.p):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, GradedSubspace) or other.r is not self.r:
            return NotImplemented
        dims = range(self.r.s + 1)
        return all(
            self.dim(d) == other.dim(d)
            and self.piece(d)[1] == other.piece(d)[1]
            and np.array_equal(self.rows(d), other.rows(d))
            for d in dims)

    def __repr__(self):
        dims = [self.dim(d) for d in range(self.r.s + 1)]
        return f"GradedSubspace(dims={dims})"
