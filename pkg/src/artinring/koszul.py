"""Koszul complexes with coefficients in degree windows of R.

Every coefficient module that matters here (R itself, the powers m^j, the
quotients R/m^j, the residue field) is a consecutive range of graded pieces
of R with R's own multiplication, so a module is just a window [lo, hi] and
the complex machinery is written once against windows.

Basis conventions, fixed for reproducibility:
  - exterior monomials e_S for S a sorted index subset, subsets listed
    lexicographically;
  - the piece of X (x) K in homological degree i and internal degree n has
    coefficient degree d = n - i, with basis blocks ordered subset-major;
  - the differential sends r e_{j1}^...^e_{ji} to
    sum_a (-1)^(a+1) x_{ja} r e_{...drop a...}, and acts on coordinate
    rows from the right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import linalg
from .quotient import GradedQuotient


@dataclass(frozen=True)
class Window:
    lo: int
    hi: int  # inclusive; empty when hi < lo

    def contains(self, d: int) -> bool:
        return self.lo <= d <= self.hi


def full_window(r: GradedQuotient) -> Window:
    return Window(0, r.s)


def power_window(r: GradedQuotient, j: int) -> Window:
    """m^j as a window (degrees j..s)."""
    return Window(j, r.s)


def quotient_window(r: GradedQuotient, a: int) -> Window:
    """R/m^a as a window (degrees 0..a-1)."""
    return Window(0, a - 1)


def wdim(r: GradedQuotient, win: Window, d: int) -> int:
    return r.dim(d) if win.contains(d) else 0


def wmult(r: GradedQuotient, win: Window, d: int, v: int) -> np.ndarray:
    if win.contains(d) and win.contains(d + 1):
        return r.mult(d, v)
    return np.zeros((wdim(r, win, d), wdim(r, win, d + 1)), dtype=np.int64)


def wpoly_mult(r: GradedQuotient, win: Window, d: int, f) -> np.ndarray:
    if win.contains(d) and win.contains(d + f.degree):
        return r.poly_mult_matrix(d, f)
    return np.zeros((wdim(r, win, d), wdim(r, win, d + f.degree)), dtype=np.int64)


@lru_cache(maxsize=None)
def exterior_subsets(e: int, i: int) -> tuple:
    return tuple(combinations(range(e), i))


@lru_cache(maxsize=None)
def _subset_pos(e: int, i: int) -> dict:
    return {s: k for k, s in enumerate(exterior_subsets(e, i))}


def merge_sign(t: tuple, s: tuple) -> int:
    """Sign of e_t ^ e_s relative to the sorted union; 0 on overlap."""
    if set(t) & set(s):
        return 0
    inversions = sum(1 for a in t for b in s if b < a)
    return -1 if inversions % 2 else 1


class FiniteComplex:
    """Chain complex given by per-(homological, internal)-degree matrices.

    diffs[(i, n)] maps coordinate rows of piece (i, n) to piece (i-1, n);
    d composed with d is asserted to vanish on construction.
    """

    def __init__(self, p: int, dims: dict, diffs: dict, audit: bool = True):
        self.p = p
        self.dims = dict(dims)
        self.diffs = dict(diffs)
        self._cycles: dict = {}
        if audit:
            for (i, n), dmat in self.diffs.items():
                lower = self.diffs.get((i - 1, n))
                if lower is not None and dmat.size and lower.size:
                    if linalg.matmul_mod(dmat, lower, p).any():
                        raise AssertionError(
                            f"differential squared is nonzero at {(i, n)}")

    def dim(self, i: int, n: int) -> int:
        return self.dims.get((i, n), 0)

    def internal_degrees(self, i: int):
        return sorted(n for (j, n) in self.dims if j == i and self.dims[j, n])

    def diff(self, i: int, n: int) -> np.ndarray:
        got = self.diffs.get((i, n))
        if got is not None:
            return got
        return np.zeros((self.dim(i, n), self.dim(i - 1, n)), dtype=np.int64)

    def cycles(self, i: int, n: int) -> np.ndarray:
        """RREF rows spanning the kernel of the differential at (i, n)."""
        key = (i, n)
        if key not in self._cycles:
            d = self.diff(i, n)
            ker = linalg.kernel_basis(d.T, self.p)
            self._cycles[key] = linalg.rref(ker, self.p)[2]
        return self._cycles[key]

    def boundary_rows(self, i: int, n: int) -> np.ndarray:
        """Rows spanning the image landing in (i, n)."""
        return self.diff(i + 1, n)

    def homology_dim(self, i: int, n: int) -> int:
        z = self.cycles(i, n).shape[0]
        b = linalg.rank_mod(self.boundary_rows(i, n), self.p)
        return z - b

    def homology_total(self, i: int) -> int:
        degs = set(self.internal_degrees(i)) | set(self.internal_degrees(i + 1))
        return sum(self.homology_dim(i, n) for n in degs)


def koszul_block(r: GradedQuotient, win: Window, i: int, d: int) -> np.ndarray:
    """Differential block X_d (x) K_i -> X_{d+1} (x) K_{i-1}."""
    e, p = r.e, r.p
    subs = exterior_subsets(e, i)
    tpos = _subset_pos(e, i - 1)
    bd = wdim(r, win, d)
    bd1 = wdim(r, win, d + 1)
    dmat = np.zeros((bd * len(subs), bd1 * len(exterior_subsets(e, i - 1))),
                    dtype=np.int64)
    if bd and bd1:
        for si, s in enumerate(subs):
            for a, j in enumerate(s):
                ti = tpos[tuple(x for x in s if x != j)]
                sign = -1 if a % 2 else 1
                dmat[si * bd:(si + 1) * bd,
                     ti * bd1:(ti + 1) * bd1] += sign * wmult(r, win, d, j)
    return dmat % p


def koszul_complex(r: GradedQuotient, win: Window) -> FiniteComplex:
    e, p = r.e, r.p
    dims = {}
    for i in range(e + 1):
        ns = len(exterior_subsets(e, i))
        for d in range(max(win.lo, 0), win.hi + 1):
            dims[(i, d + i)] = wdim(r, win, d) * ns
    diffs = {}
    for i in range(1, e + 1):
        for d in range(max(win.lo, 0), win.hi + 1):
            if dims.get((i, d + i), 0) or dims.get((i - 1, d + i), 0):
                diffs[(i, d + i)] = koszul_block(r, win, i, d)
    return FiniteComplex(p, dims, diffs)


# ---------------------------------------------------------------------------
# Betti tables over the polynomial ring

@dataclass
class BettiTable:
    base: str
    beta: dict = field(default_factory=dict)

    def add(self, i: int, j: int, dim: int):
        if dim:
            self.beta[(i, j)] = self.beta.get((i, j), 0) + dim

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.beta.items() if a == i)

    def totals(self):
        imax = max((i for i, _ in self.beta), default=0)
        return [self.total(i) for i in range(imax + 1)]

    def text(self) -> str:
        """Classical layout: row r, column i holds the (i, i+r) entry."""
        if not self.beta:
            return "(zero table)"
        imax = max(i for i, _ in self.beta)
        rmin = min(j - i for i, j in self.beta)
        rmax = max(j - i for i, j in self.beta)
        rows = [["total:"] + [str(self.total(i)) for i in range(imax + 1)]]
        for rr in range(rmin, rmax + 1):
            cells = [f"{rr}:"]
            for i in range(imax + 1):
                v = self.beta.get((i, i + rr), 0)
                cells.append(str(v) if v else ".")
            rows.append(cells)
        widths = [max(len(row[k]) for row in rows) for k in range(len(rows[0]))]
        return "\n".join(
            " ".join(cell.rjust(w) for cell, w in zip(row, widths))
            for row in rows)

    def json_records(self):
        return [{"i": i, "j": j, "dim": v}
                for (i, j), v in sorted(self.beta.items())]


def tor_over_Q(r: GradedQuotient) -> BettiTable:
    """Bigraded homology of R (x) K, one table entry per (i, internal)."""
    cx = koszul_complex(r, full_window(r))
    table = BettiTable(base="Q")
    for i in range(r.e + 1):
        degs = set(cx.internal_degrees(i)) | set(cx.internal_degrees(i + 1))
        for n in sorted(degs):
            table.add(i, n, cx.homology_dim(i, n))
    return table


def window_map_rank(r: GradedQuotient, src: Window, tgt: Window, i: int) -> int:
    """Rank of H_i(K(src)) -> H_i(K(tgt)) for the degreewise-identity map
    between windows (an inclusion m^j into m^j', or a truncation quotient).

    Where both windows are alive the coordinate spaces literally coincide,
    so cycles push forward by reinterpretation; degrees alive only in the
    source map to zero.
    """
    csrc = koszul_complex(r, src)
    ctgt = koszul_complex(r, tgt)
    total = 0
    for n in csrc.internal_degrees(i):
        d = n - i
        if not tgt.contains(d):
            continue
        z = csrc.cycles(i, n)
        if not z.shape[0]:
            continue
        b = ctgt.boundary_rows(i, n)
        stacked = np.concatenate([b, z], axis=0)
        total += linalg.rank_mod(stacked, r.p) - linalg.rank_mod(b, r.p)
    return total


def nu_rank_Q(r: GradedQuotient, i: int, ell: int) -> int:
    """Rank of H_i(m^{ell+1} (x) K) -> H_i(m^ell (x) K)."""
    if not 0 <= i <= r.e or ell < 0:
        raise ValueError("nu_rank_Q range violation")
    if ell > r.s:
        return 0
    return window_map_rank(r, power_window(r, ell + 1), power_window(r, ell), i)


def truncation_map_rank(r: GradedQuotient, i: int, ell: int) -> int:
    """Rank of H_i(R/m^{ell+1} (x) K) -> H_i(R/m^ell (x) K)."""
    return window_map_rank(r, quotient_window(r, ell + 1), quotient_window(r, ell), i)


# ---------------------------------------------------------------------------
# the distinguished hypersurface cycle

@dataclass(frozen=True)
class KoszulCycle:
    hom_degree: int
    internal_degree: int
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords",
                           np.asarray(self.coords, dtype=np.int64))


@dataclass(frozen=True)
class HypersurfaceData:
    """A minimal-degree form h of I brought to monic shape in x_1.

    change is the variable substitution applied to the presentation, ring
    the rebuilt quotient, alphas the coefficients with h = sum alphas[i] X_i
    and alphas[0] = X_1^{t-1}; gbar is the resulting Koszul 1-cycle."""
    ring: GradedQuotient
    change: np.ndarray
    h: object
    t: int
    alphas: tuple
    gbar: KoszulCycle


def minimal_degree_generator(r: GradedQuotient):
    """First RREF row of the lowest nonzero piece of the ideal."""
    from .poly import HomogPoly
    rank, _, red = r.ideal_piece(r.t)
    if rank == 0:
        raise ValueError("the ideal is zero below the top degree")
    return HomogPoly(r.p, r.e, r.t, red[0])


def construct_g(r: GradedQuotient, h=None, seed: int = 0, retries: int = 200):
    """Normalize a minimal-degree form and lift it to a Koszul 1-cycle.

    Finds a point where the leading coefficient can be made nonzero, applies
    the corresponding change of variables to the whole presentation, rescales
    h to be monic in x_1, and splits off the T_i coefficients (each monomial
    is assigned to its largest dividing variable, which leaves exactly
    x_1^{t-1} on T_1).
    """
    from .poly import HomogPoly, monomial_index, num_monomials

    if h is None:
        h = minimal_degree_generator(r)
    if h.is_zero() or h.degree != r.t:
        raise ValueError("h must be a nonzero form of the minimal ideal degree")
    p, e, t = r.p, r.e, h.degree
    lead = monomial_index(e, t)[(t,) + (0,) * (e - 1)]
    if int(h.vec[lead]):
        change = np.eye(e, dtype=np.int64)
        newr, newh = r, h
    else:
        rng = np.random.default_rng(seed)
        point = None
        for _ in range(retries):
            cand = rng.integers(0, p, size=e - 1, dtype=np.int64)
            if h.evaluate([1] + [int(x) for x in cand]):
                point = cand
                break
        if point is None:
            raise RuntimeError(
                "no nonvanishing point found; raise the prime and retry")
        change = np.eye(e, dtype=np.int64)
        change[1:, 0] = point
        newh = h.substitute_linear(change)
        assert int(newh.vec[lead])
        newr = _rebuild(r, change)
    inv = pow(int(newh.vec[lead]), p - 2, p)
    newh = newh.scale(inv)

    alphas = [HomogPoly.zero(p, e, t - 1) for _ in range(e)]
    for mono, coeff in newh.terms():
        v = max(i for i in range(e) if mono[i])
        lower = tuple(m - (1 if i == v else 0) for i, m in enumerate(mono))
        alphas[v] = alphas[v] + HomogPoly.monomial(p, e, lower, coeff)
    assert alphas[0] == HomogPoly.monomial(p, e, (t - 1,) + (0,) * (e - 1))
    back = sum((alphas[v] * HomogPoly.monomial(p, e, tuple(
        1 if i == v else 0 for i in range(e))) for v in range(e)),
        HomogPoly.zero(p, e, t))
    assert back == newh

    # gbar = sum alphas[v] T_v as coordinates in (R (x) K)_{1, t}
    h1 = newr.dim(t - 1)
    coords = np.zeros(e * h1, dtype=np.int64)
    for v in range(e):
        coords[v * h1:(v + 1) * h1] = newr.poly_coords(alphas[v])
    gbar = KoszulCycle(1, t, coords)
    cx = koszul_complex(newr, full_window(newr))
    img = linalg.matmul_mod(coords[None, :], cx.diff(1, t), p)
    if img.any():
        raise AssertionError("gbar is not a cycle: h does not die in R")
    return HypersurfaceData(ring=newr, change=change, h=newh, t=t,
                            alphas=tuple(alphas), gbar=gbar)


def _rebuild(r: GradedQuotient, change: np.ndarray) -> GradedQuotient:
    from .quotient import build_quotient
    gens = [g.substitute_linear(change) for g in r.gens]
    out = build_quotient(r.p, r.e, gens)
    if out.hilbert != r.hilbert:
        raise AssertionError("change of variables altered the Hilbert function")
    return out


def cycle_mult_matrix(r: GradedQuotient, cyc: KoszulCycle, win: Window,
                      i: int, n: int) -> np.ndarray:
    """Matrix of left multiplication by a Koszul cycle over full R:
    (i, n) of K(win) -> (i + ci, n + cn) of K(win)."""
    e, p = r.e, r.p
    ci, cn = cyc.hom_degree, cyc.internal_degree
    dc = cn - ci
    d = n - i
    src_sub = exterior_subsets(e, i)
    tgt_sub = exterior_subsets(e, i + ci)
    tpos = _subset_pos(e, i + ci)
    bd = wdim(r, win, d)
    bd2 = wdim(r, win, d + dc)
    out = np.zeros((bd * len(src_sub), bd2 * len(tgt_sub)), dtype=np.int64)
    if bd == 0 or bd2 == 0:
        return out
    cyc_sub = exterior_subsets(e, ci)
    hc = r.dim(dc)
    for k, tset in enumerate(cyc_sub):
        u = cyc.coords[k * hc:(k + 1) * hc]
        if not u.any():
            continue
        f = r.rep_poly(dc, u)
        m = wpoly_mult(r, win, d, f)
        for si, s in enumerate(src_sub):
            sign = merge_sign(tset, s)
            if sign == 0:
                continue
            ti = tpos[tuple(sorted(set(tset) | set(s)))]
            out[si * bd:(si + 1) * bd, ti * bd2:(ti + 1) * bd2] += sign * m
    return out % p


# ---------------------------------------------------------------------------
# the containment and product checks

def _require(cond: bool, what: str):
    if not cond:
        raise ValueError(f"hypotheses not met: {what}")


def lemma42c_check(hyp: HypersurfaceData) -> bool:
    """Top socle cycles are multiples of gbar: m^s (x) K_e sits inside
    gbar Z_{e-1}(m^t (x) K)."""
    from . import structure as st
    r, t = hyp.ring, hyp.t
    _require(r.s == 2 * t - 1, "top socle degree differs from 2t-1")
    _require(st.is_compressed(r)[0], "ring is not compressed")
    e, p = r.e, r.p
    win = power_window(r, t)
    cx = koszul_complex(r, win)
    n_src = t + e - 1
    z = cx.cycles(e - 1, n_src)
    gm = cycle_mult_matrix(r, hyp.gbar, win, e - 1, n_src)
    image = (linalg.matmul_mod(z, gm, p) if z.shape[0]
             else np.zeros((0, gm.shape[1]), dtype=np.int64))
    rank, piv, red = linalg.rref(image, p)
    target_dim = r.dim(r.s)  # m^s (x) K_e in internal degree s + e
    if rank < target_dim:
        return False
    return linalg.in_rowspace(red, piv, np.eye(target_dim, dtype=np.int64), p)


def snow_hypothesis_check(hyp: HypersurfaceData, b: int, tau: int,
                          z1: KoszulCycle = None) -> bool:
    """m^s K inside z1 Z(m^b K) + boundaries of m^{s-1} K, degreewise."""
    from . import structure as st
    r = hyp.ring
    s, e, p = r.s, r.e, r.p
    _require(s - tau <= b <= s - 1, "b outside [s - tau, s - 1]")
    _require(2 <= tau + 1 <= st.v_invariant(r), "tau + 1 outside [2, v]")
    if z1 is None:
        z1 = hyp.gbar
    # z1 squares to zero in the Koszul algebra; asserted, not assumed
    sq = cycle_mult_matrix(r, z1, full_window(r), z1.hom_degree,
                           z1.internal_degree)
    if linalg.matmul_mod(z1.coords[None, :], sq, p).any():
        raise AssertionError("z1 does not square to zero")
    win_b = power_window(r, b)
    win_s1 = power_window(r, s - 1)
    cx_b = koszul_complex(r, win_b)
    cx_s1 = koszul_complex(r, win_s1)
    t = z1.internal_degree
    cs = r.dim(s)
    for i in range(0, e + 1):
        n = s + i  # internal degree of m^s (x) K_i
        nsub = len(exterior_subsets(e, i))
        if cs * nsub == 0:
            continue
        pieces = []
        if i >= z1.hom_degree:
            zrows = cx_b.cycles(i - z1.hom_degree, n - t)
            if zrows.shape[0]:
                gm = cycle_mult_matrix(r, z1, win_b, i - z1.hom_degree, n - t)
                pieces.append(linalg.matmul_mod(zrows, gm, p))
        brows = cx_s1.boundary_rows(i, n)
        if brows.shape[0]:
            pieces.append(brows)
        if not pieces:
            return False
        span = np.concatenate(pieces, axis=0)
        # at internal degree s + i the whole piece of either window has
        # coefficient degree s, so coordinates agree and the target is
        # everything
        want = _top_block_rows(r, win_b, i, n, cs)
        rank, piv, red = linalg.rref(span, p)
        if not linalg.in_rowspace(red, piv, want, p):
            return False
    return True


def _top_block_rows(r: GradedQuotient, win: Window, i: int, n: int,
                    cs: int) -> np.ndarray:
    """Basis rows of the coefficient-degree-s block inside piece (i, n) of
    K(win); for n = s + i that block is the whole piece."""
    nsub = len(exterior_subsets(r.e, i))
    d = n - i
    assert d == r.s
    dim = wdim(r, win, d) * nsub
    assert wdim(r, win, d) == cs
    return np.eye(dim, dtype=np.int64)


def tor_product_check(hyp: HypersurfaceData) -> bool:
    """gbar times H_{e-1}(R (x) K) spans H_e(R (x) K)."""
    from . import structure as st
    r, t = hyp.ring, hyp.t
    if r.e > 1:
        # one variable is a hypersurface; no shape condition needed there
        _require(r.s == 2 * t - 1, "top socle degree differs from 2t-1")
        _require(st.is_compressed(r)[0], "ring is not compressed")
    e, p = r.e, r.p
    win = full_window(r)
    cx = koszul_complex(r, win)
    # H_e lives in top exterior degree; boundaries into it vanish
    pieces = {}
    for n in cx.internal_degrees(e):
        z = cx.cycles(e, n)
        if z.shape[0]:
            pieces[n] = z
    got_ranks = {}
    for n_src in cx.internal_degrees(e - 1):
        z = cx.cycles(e - 1, n_src)
        if not z.shape[0]:
            continue
        gm = cycle_mult_matrix(r, hyp.gbar, win, e - 1, n_src)
        img = linalg.matmul_mod(z, gm, p)
        n_tgt = n_src + hyp.gbar.internal_degree
        if img.any():
            got_ranks.setdefault(n_tgt, []).append(img)
    for n, target in pieces.items():
        want = target.shape[0]
        rows = got_ranks.get(n)
        if rows is None:
            return False
        span = np.concatenate(rows, axis=0)
        rank, piv, red = linalg.rref(span, p)
        if rank < want or not linalg.in_rowspace(red, piv, target, p):
            return False
    return True


def homology_product_rank(r: GradedQuotient, i: int, j: int) -> int:
    """Dimension of the span of H_i . H_j inside H_{i+j} of R (x) K."""
    p = r.p
    win = full_window(r)
    cx = koszul_complex(r, win)
    per_degree: dict[int, list[np.ndarray]] = {}
    for n1 in cx.internal_degrees(i):
        z1_rows = cx.cycles(i, n1)
        b1 = cx.boundary_rows(i, n1)
        # class representatives: cycle rows not absorbed by boundaries
        reps = _class_reps(z1_rows, b1, p)
        for u in reps:
            cyc = KoszulCycle(i, n1, u)
            for n2 in cx.internal_degrees(j):
                z2 = cx.cycles(j, n2)
                if not z2.shape[0]:
                    continue
                gm = cycle_mult_matrix(r, cyc, win, j, n2)
                img = linalg.matmul_mod(z2, gm, p)
                if img.any():
                    per_degree.setdefault(n1 + n2, []).append(img)
    total = 0
    for n, rows in per_degree.items():
        span = np.concatenate(rows, axis=0)
        b = cx.boundary_rows(i + j, n)
        stacked = np.concatenate([b, span], axis=0)
        total += linalg.rank_mod(stacked, p) - linalg.rank_mod(b, p)
    return total


def _class_reps(cycles: np.ndarray, boundaries: np.ndarray, p: int):
    if not cycles.shape[0]:
        return []
    rank_b, piv_b, _ = linalg.rref(boundaries, p)
    _, piv_z, red_z = linalg.rref(
        np.concatenate([boundaries, cycles], axis=0), p)
    keep = [k for k, c in enumerate(piv_z) if c not in set(piv_b)]
    return [red_z[k] for k in keep]
