"""Generic level algebras from random subspaces of the top graded piece.

A level quotient with top socle degree s and type c is produced by drawing a
random codimension-c subspace V of Q_s and intersecting the colon ideals
(V : Q_{s-d}) degree by degree.  For a generic draw the resulting quotient
is compressed with socle c z^s; genericity is an open condition, so the
sampler reports what it drew and leaves the compressedness judgement to the
caller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .poly import HomogPoly, monomials, num_monomials, shift_index_map
from .quotient import GradedQuotient


@dataclass(frozen=True)
class LevelSpec:
    p: int
    e: int
    s: int
    c: int
    seed: int = 0

    def __post_init__(self):
        linalg.PrimeField(self.p)
        if self.e < 2:
            raise ValueError("need embedding dimension at least 2")
        if self.s < 1:
            raise ValueError("need top socle degree at least 1")
        top = num_monomials(self.e, self.s)
        if not 1 <= self.c < top:
            raise ValueError(
                f"type must satisfy 1 <= c < {top} for e={self.e}, s={self.s}")


def _colon_piece(v_rank, v_piv, v_red, e, s, d, p):
    """(V :_{Q_d} Q_{s-d}) as RREF rows inside Q_d."""
    n_d = num_monomials(e, d)
    proj = np.eye(num_monomials(e, s), dtype=np.int64)
    cols = [c for c in range(num_monomials(e, s)) if c not in set(v_piv)]
    if v_rank:
        proj[list(v_piv), :] = (proj[list(v_piv), :] - v_red) % p
    proj = proj[:, cols]
    mats = []
    for m in monomials(e, s - d):
        smap = shift_index_map(e, d, m)
        shift = np.zeros((n_d, num_monomials(e, s)), dtype=np.int64)
        shift[np.arange(n_d), smap] = 1
        mats.append(shift @ proj % p)
    combined = np.concatenate(mats, axis=1)
    sol = linalg.kernel_basis(combined.T, p)
    rank, piv, red = linalg.rref(sol, p)
    return rank, piv, red


def _new_generator_rows(piece, lower_span, p):
    """Rows of the degree piece that minimally extend Q_1 times the lower
    degrees: RREF rows whose pivot the sub-space misses."""
    rank, piv, red = piece
    if rank == 0:
        return np.zeros((0, red.shape[1]), dtype=np.int64)
    sub_rank, sub_piv, _ = linalg.rref(lower_span, p)
    keep = [i for i, c in enumerate(piv) if c not in set(sub_piv)]
    return red[keep]


def sample_level_ideal(spec: LevelSpec, max_retries: int = 20):
    """Homogeneous generators of the colon ideal of a random top subspace.

    Deterministic for a fixed spec (the seed drives the only randomness).
    """
    p, e, s, c = spec.p, spec.e, spec.s, spec.c
    rng = np.random.default_rng(spec.seed)
    n_top = num_monomials(e, s)
    for _ in range(max_retries):
        cut = rng.integers(0, p, size=(c, n_top), dtype=np.int64)
        if linalg.rank_mod(cut, p) == c:
            break
    else:
        raise RuntimeError("degenerate sample: no full-rank cut matrix found")
    v_rows = linalg.kernel_basis(cut, p)
    v_rank, v_piv, v_red = linalg.rref(v_rows, p)
    assert v_rank == n_top - c

    pieces = {}
    for d in range(1, s):
        pieces[d] = _colon_piece(v_rank, v_piv, v_red, e, s, d, p)
    pieces[s] = (v_rank, v_piv, v_red)

    gens = []
    prev_red = np.zeros((0, num_monomials(e, 0)), dtype=np.int64)
    for d in range(1, s + 1):
        n_d = num_monomials(e, d)
        shifted = []
        if prev_red.shape[0]:
            for var in range(e):
                smap = shift_index_map(e, d - 1, tuple(
                    1 if i == var else 0 for i in range(e)))
                block = np.zeros((prev_red.shape[0], n_d), dtype=np.int64)
                block[:, smap] = prev_red
                shifted.append(block)
        lower = (np.concatenate(shifted, axis=0) if shifted
                 else np.zeros((0, n_d), dtype=np.int64))
        for row in _new_generator_rows(pieces[d], lower, p):
            gens.append(HomogPoly(p, e, d, row))
        prev_red = pieces[d][2]
    # cap generators: whatever of Q_{s+1} the ideal misses
    n_cap = num_monomials(e, s + 1)
    shifted = []
    for var in range(e):
        smap = shift_index_map(e, s, tuple(1 if i == var else 0 for i in range(e)))
        block = np.zeros((prev_red.shape[0], n_cap), dtype=np.int64)
        block[:, smap] = prev_red
        shifted.append(block)
    lower = np.concatenate(shifted, axis=0)
    full = (n_cap, tuple(range(n_cap)), np.eye(n_cap, dtype=np.int64))
    for row in _new_generator_rows(full, lower, p):
        gens.append(HomogPoly(p, e, s + 1, row))
    return gens


def recover_subspace(r: GradedQuotient) -> np.ndarray:
    """The degree-s piece of the defining ideal, as RREF rows in Q_s."""
    return r.ideal_piece(r.s)[2]
