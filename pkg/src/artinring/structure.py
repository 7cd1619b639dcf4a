"""Ideal and subspace calculus on a graded Artinian quotient.

Powers of the maximal ideal, annihilators, colons, the socle, the numeric
invariants (socle polynomial, v, compressedness) and the two structural
checks that feed the later homological machinery: the multiplication maps
into Hom(m^{k-1}/m^k, socle pieces) and the first-step factorization of the
top socle degree through a principal subideal.
"""

from __future__ import annotations

import math

import numpy as np

from . import linalg
from .quotient import GradedQuotient, GradedSubspace


def zero_subspace(r: GradedQuotient) -> GradedSubspace:
    return GradedSubspace(r)


def full_subspace(r: GradedQuotient) -> GradedSubspace:
    return GradedSubspace(
        r, {d: np.eye(r.dim(d), dtype=np.int64) for d in range(r.s + 1)})


def power(r: GradedQuotient, j: int) -> GradedSubspace:
    """m^j in the graded model: zero below degree j, everything at and above."""
    if j < 0:
        raise ValueError("negative power")
    return GradedSubspace(
        r, {d: np.eye(r.dim(d), dtype=np.int64) for d in range(j, r.s + 1)})


def sum_subspaces(a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    r = a.r
    out = GradedSubspace(r)
    for d in range(r.s + 1):
        stacked = np.concatenate([a.rows(d), b.rows(d)], axis=0)
        out.set_piece(d, stacked)
    return out


def intersect_subspaces(a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    r = a.r
    out = GradedSubspace(r)
    for d in range(r.s + 1):
        ra, rb = a.rows(d), b.rows(d)
        if ra.shape[0] and rb.shape[0]:
            out.set_piece(d, linalg.intersect_rowspaces(ra, rb, r.p))
    return out


def _left_kernel(mat: np.ndarray, p: int) -> np.ndarray:
    """Rows x with x @ mat = 0."""
    return linalg.kernel_basis(mat.T, p)


def _quot_proj(dim: int, piece, p: int) -> np.ndarray:
    """Matrix of the projection onto a canonical complement of a subspace
    given by its RREF piece; shape (dim, dim - rank)."""
    rank, piv, red = piece
    cols = [c for c in range(dim) if c not in set(piv)]
    full = np.eye(dim, dtype=np.int64)
    if rank:
        full[list(piv), :] = (full[list(piv), :] - red) % p
    return full[:, cols]


def _generator_rows(sub: GradedSubspace):
    r = sub.r
    for j in range(r.s + 1):
        rows = sub.rows(j)
        for i in range(rows.shape[0]):
            yield j, rows[i]


def annihilator(r: GradedQuotient, sub: GradedSubspace) -> GradedSubspace:
    """(0 :_R sub) = elements multiplying every row of sub to zero."""
    out = GradedSubspace(r)
    gens = list(_generator_rows(sub))
    for d in range(r.s + 1):
        mats = []
        for j, row in gens:
            if d + j > r.s:
                continue
            f = r.rep_poly(j, row)
            mats.append(r.poly_mult_matrix(d, f))
        if not mats:
            out.set_piece(d, np.eye(r.dim(d), dtype=np.int64))
            continue
        combined = np.concatenate(mats, axis=1)
        out.set_piece(d, _left_kernel(combined, r.p))
    return out


def colon_into(r: GradedQuotient, a: GradedSubspace, b: GradedSubspace) -> GradedSubspace:
    """(a :_R b) = {x : x * row is in a, for every row of b}."""
    out = GradedSubspace(r)
    gens = list(_generator_rows(b))
    for d in range(r.s + 1):
        mats = []
        for j, row in gens:
            if d + j > r.s:
                continue
            f = r.rep_poly(j, row)
            proj = _quot_proj(r.dim(d + j), a.piece(d + j), r.p)
            if proj.shape[1] == 0:
                continue
            mats.append(r.poly_mult_matrix(d, f) @ proj % r.p)
        if not mats:
            out.set_piece(d, np.eye(r.dim(d), dtype=np.int64))
            continue
        combined = np.concatenate(mats, axis=1)
        out.set_piece(d, _left_kernel(combined, r.p))
    return out


def socle(r: GradedQuotient) -> GradedSubspace:
    """Kernel of multiplication by all the variables."""
    out = GradedSubspace(r)
    for d in range(r.s + 1):
        if d == r.s:
            out.set_piece(d, np.eye(r.dim(d), dtype=np.int64))
            continue
        stacked = np.concatenate([r.mult(d, v) for v in range(r.e)], axis=1)
        out.set_piece(d, _left_kernel(stacked, r.p))
    return out


def socle_polynomial(r: GradedQuotient):
    soc = socle(r)
    return tuple(soc.dim(d) for d in range(r.s + 1))


def v_invariant(r: GradedQuotient) -> int:
    for i in range(r.s + 2):
        if r.dim(i) < math.comb(r.e - 1 + i, i):
            return i
    raise AssertionError("unreachable: dim R_{s+1} = 0")


def compressed_bound(e: int, socle_poly, i: int) -> int:
    s = len(socle_poly) - 1
    tail = sum(socle_poly[l] * math.comb(e - 1 + l - i, l - i)
               for l in range(max(i, 0), s + 1))
    return min(math.comb(e - 1 + i, i), tail)


def is_compressed(r: GradedQuotient):
    """Maximal-length test: Hilbert function against the socle-polynomial
    bound in every degree, cross-checked with the closed-form length count.
    The two tests agree for every Artinian graded quotient; disagreement
    means a bug, not an interesting ring."""
    cs = socle_polynomial(r)
    per_degree = []
    flag_formula = True
    for i in range(r.s + 1):
        bound = compressed_bound(r.e, cs, i)
        per_degree.append({"degree": i, "hilbert": r.dim(i), "bound": bound})
        if r.dim(i) != bound:
            flag_formula = False
    v = v_invariant(r)
    lam = r.length()
    lam_formula = math.comb(r.e + v - 1, v - 1) + sum(
        cs[l] * math.comb(r.e + l - v, l - v) for l in range(v, r.s + 1))
    flag_length = lam == lam_formula
    if flag_formula != flag_length:
        raise AssertionError(
            f"compressedness tests disagree: per-degree {flag_formula}, "
            f"length {lam} vs {lam_formula}")
    report = {
        "compressed": flag_formula,
        "v": v,
        "socle_polynomial": cs,
        "per_degree": per_degree,
        "length": lam,
        "length_bound": lam_formula,
    }
    return flag_formula, report


def is_level(r: GradedQuotient) -> bool:
    cs = socle_polynomial(r)
    return all(c == 0 for c in cs[: r.s]) and cs[r.s] > 0


def mult_map(r: GradedQuotient, j: int, k: int):
    """Multiplication pairing out of m^j, cut along the annihilator filtration.

    Source: (m^j cap (0:m^k)) / (m^j cap (0:m^{k-1})).
    Target: Hom(m^{k-1}/m^k, socle cap m^{j+k-1}), coordinatized by the
    standard basis of R_{k-1} against the socle piece bases.
    Returns (matrix, injective, surjective).  The map is graded and block
    diagonal: the degree-d part of the source pairs R_{k-1} into degree
    d+k-1.  Injectivity is structural (the kernel of the pairing is exactly
    the smaller colon) and asserted.
    """
    if j < 0 or k < 1 or j + k > r.s + 1:
        raise ValueError("mult_map range violation")
    p = r.p
    soc_piece = intersect_subspaces(socle(r), power(r, j + k - 1))
    upper = intersect_subspaces(power(r, j), annihilator(r, power(r, k)))
    lower = intersect_subspaces(power(r, j), annihilator(r, power(r, k - 1)))
    h_k1 = r.dim(k - 1)
    target_dims = {d: soc_piece.dim(d) for d in range(r.s + 1)}
    target_total = h_k1 * sum(target_dims.values())

    blocks = []
    source_total = 0
    rank_total = 0
    for d in range(j, r.s + 1):
        rank_u, piv_u, red_u = upper.piece(d)
        rank_l, piv_l, red_l = lower.piece(d)
        src_dim = rank_u - rank_l
        if src_dim == 0:
            continue
        # representatives of upper mod lower: RREF rows whose pivot is not
        # a pivot of the lower space (nested row spaces)
        keep = [i for i, c in enumerate(piv_u) if c not in set(piv_l)]
        assert len(keep) == src_dim
        reps = red_u[keep]
        tgt_deg = d + k - 1
        rank_w, piv_w, red_w = soc_piece.piece(tgt_deg)
        block = np.zeros((src_dim, h_k1 * rank_w), dtype=np.int64)
        if rank_w:
            for b in range(h_k1):
                mono = r.std_monomials(k - 1)[b]
                m_mat = r.mono_mult_matrix(d, mono)
                prod = reps @ m_mat % p
                # products lie in the socle piece; read coordinates off the
                # pivot columns of its RREF basis
                assert linalg.in_rowspace(red_w, piv_w, prod, p)
                block[:, b * rank_w:(b + 1) * rank_w] = prod[:, list(piv_w)]
        blocks.append((src_dim, block))
        source_total += src_dim
        rank_total += linalg.rank_mod(block, p)

    matrix = np.zeros((source_total, target_total), dtype=np.int64)
    # lay blocks down the diagonal in degree order for the returned matrix
    row0, col0 = 0, 0
    for src_dim, block in blocks:
        matrix[row0:row0 + src_dim, col0:col0 + block.shape[1]] = block
        row0 += src_dim
        col0 += block.shape[1]
    injective = rank_total == source_total
    if not injective:
        raise AssertionError("multiplication pairing failed to be injective")
    surjective = rank_total == target_total
    return matrix, injective, surjective


def map_subspace_by_linear_power(r: GradedQuotient, sub: GradedSubspace,
                                 x1_coords, times: int) -> GradedSubspace:
    """Image of a subspace under multiplication by a linear form, iterated."""
    out = GradedSubspace(r)
    for d in range(r.s + 1):
        rows = sub.rows(d)
        if not rows.shape[0] or d + times > r.s:
            continue
        img = rows
        for step in range(times):
            img = img @ r.linear_mult_matrix(d + step, x1_coords) % r.p
        out.set_piece(d + times, img)
    return out


def first_step_check(r: GradedQuotient, x1_coords) -> bool:
    """With m = (x1) + m' and t = (s+1)/2, test
    x1^{t-1} (ann(m') cap m^t) = m^s."""
    x1 = np.asarray(x1_coords, dtype=np.int64) % r.p
    problems = []
    if r.s % 2 == 0:
        problems.append("top socle degree is even")
    flag, _ = is_compressed(r)
    if not flag:
        problems.append("ring is not compressed")
    if r.s != 2 * v_invariant(r) - 1:
        problems.append("s differs from 2v-1")
    if x1.shape != (r.dim(1),) or not x1.any():
        problems.append("x1 must be a nonzero element of R_1")
    if problems:
        raise ValueError("hypotheses not met: " + "; ".join(problems))
    t = (r.s + 1) // 2
    # canonical complement: coordinates away from the pivot of x1
    _, piv, _ = linalg.rref(x1.reshape(1, -1), r.p)
    comp = [c for c in range(r.dim(1)) if c != piv[0]]
    mprime = GradedSubspace(r, {1: np.eye(r.dim(1), dtype=np.int64)[comp]})
    q = intersect_subspaces(annihilator(r, mprime), power(r, t))
    image = map_subspace_by_linear_power(r, q, x1, t - 1)
    return image.dim(r.s) == r.dim(r.s)
