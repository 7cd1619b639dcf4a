"""Homology over the hypersurface Q/(h) via an adjoined divided power.

The complex is (X (x) K)<Y> truncated in homological degree: Y has
homological degree 2 and internal degree t, and the differential sends
Y^(m) a to Y^(m-1) gbar a + Y^(m) da.  Every piece in homological degree
q only involves Y-powers m <= q/2, so the truncation loses nothing below
the cap.  Coefficients X are degree windows of R, exactly as in koszul.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .koszul import (FiniteComplex, KoszulCycle, Window, cycle_mult_matrix,
                     exterior_subsets, full_window, koszul_block,
                     koszul_complex, wdim)
from .quotient import GradedQuotient


class TateComplex:
    """Finite truncation of the divided-power extension of X (x) K.

    Blocks at (q, n) are listed by ascending Y-power m, with i = q - 2m
    exterior legs and coefficient degree n - m t - i; inside a block the
    layout matches the Koszul complex, so the m = 0 block is literally
    the (i, n) piece of K(X).
    """

    def __init__(self, r: GradedQuotient, hyp, win: Window, i_max: int):
        self.r = r
        self.hyp = hyp
        self.win = win
        self.i_max = i_max
        self.t = hyp.t
        e, p = r.e, r.p
        t = self.t

        layout: dict = {}
        dims: dict = {}
        for q in range(i_max + 1):
            for m in range(max(0, -(-(q - e) // 2)), q // 2 + 1):
                i = q - 2 * m
                ns = len(exterior_subsets(e, i))
                for d in range(max(win.lo, 0), win.hi + 1):
                    n = m * t + d + i
                    w = wdim(r, win, d) * ns
                    if w == 0:
                        continue
                    blocks = layout.setdefault((q, n), {})
                    off = dims.get((q, n), 0)
                    blocks[(m, i)] = (off, w)
                    dims[(q, n)] = off + w

        diffs = {}
        for (q, n), blocks in layout.items():
            if q == 0:
                continue
            tgt_blocks = layout.get((q - 1, n), {})
            tgt_dim = dims.get((q - 1, n), 0)
            dmat = np.zeros((dims[(q, n)], tgt_dim), dtype=np.int64)
            for (m, i), (off, w) in blocks.items():
                d = n - m * t - i
                if i >= 1 and (m, i - 1) in tgt_blocks:
                    toff, tw = tgt_blocks[(m, i - 1)]
                    kb = koszul_block(r, win, i, d)
                    dmat[off:off + w, toff:toff + tw] += kb
                if m >= 1 and (m - 1, i + 1) in tgt_blocks:
                    toff, tw = tgt_blocks[(m - 1, i + 1)]
                    gb = cycle_mult_matrix(r, hyp.gbar, win, i, d + i)
                    dmat[off:off + w, toff:toff + tw] += gb
            diffs[(q, n)] = dmat % p
        self.layout = layout
        self.complex = FiniteComplex(p, dims, diffs)

    def homology_dim(self, i: int, n: int) -> int:
        if i + 1 > self.i_max:
            raise ValueError("homological degree beyond the truncation cap")
        return self.complex.homology_dim(i, n)

    def homology_by_degree(self, i: int) -> dict:
        cx = self.complex
        degs = set(cx.internal_degrees(i)) | set(cx.internal_degrees(i + 1))
        out = {}
        for n in sorted(degs):
            h = self.homology_dim(i, n)
            if h:
                out[n] = h
        return out

    def block(self, q: int, n: int, m: int, i: int):
        return self.layout.get((q, n), {}).get((m, i))


def tate_tor_P(r: GradedQuotient, hyp, win: Window, i: int,
               i_max: int = None):
    """(dim, per-internal-degree dims) of the i-th homology over the
    hypersurface, for the window module X."""
    if i_max is None:
        i_max = i + 1
    tc = TateComplex(r, hyp, win, i_max)
    per = tc.homology_by_degree(i)
    return sum(per.values()), per


def hypersurface_residue_betti(e: int, n: int):
    """Coefficients 0..n of (1 + z)^e / (1 - z^2), the residue field's
    Poincare series over any graded hypersurface in e variables."""
    from math import comb
    out = []
    for i in range(n + 1):
        out.append(sum(comb(e, i - 2 * m) for m in range(i // 2 + 1)))
    return out


def phi_kernel_dims(r: GradedQuotient, hyp, i_max: int = None):
    """Kernel dimensions of H_i(R (x) K) -> H_i over the hypersurface,
    for i = 0..e."""
    from . import structure as st
    s, t, e, p = r.s, hyp.t, r.e, r.p
    problems = []
    if s != 2 * t - 1:
        problems.append("top socle degree differs from 2t-1")
    if not st.is_compressed(r)[0]:
        problems.append("ring is not compressed")
    if s < 5:
        problems.append("socle degree below 5")
    if st.socle(r).dim(s - 1) != 0:
        problems.append("socle meets degree s-1")
    if problems:
        raise ValueError("hypotheses not met: " + "; ".join(problems))
    if i_max is None:
        i_max = e + 1
    kc = koszul_complex(r, full_window(r))
    tc = TateComplex(r, hyp, full_window(r), i_max)
    out = []
    for i in range(e + 1):
        total = 0
        rank = 0
        for n in kc.internal_degrees(i):
            z = kc.cycles(i, n)
            h_here = z.shape[0] - linalg.rank_mod(kc.boundary_rows(i, n), p)
            total += h_here
            if not z.shape[0]:
                continue
            pos = tc.block(i, n, 0, i)
            tdim = tc.complex.dim(i, n)
            if pos is None:
                continue
            off, w = pos
            assert w == z.shape[1]
            zt = np.zeros((z.shape[0], tdim), dtype=np.int64)
            zt[:, off:off + w] = z
            b = tc.complex.boundary_rows(i, n)
            stacked = np.concatenate([b, zt], axis=0)
            rank += linalg.rank_mod(stacked, p) - linalg.rank_mod(b, p)
        out.append(total - rank)
    return tuple(out)


def tate_map_rank(r: GradedQuotient, hyp, src: Window, tgt: Window,
                  i: int, i_max: int = None) -> int:
    """Rank of the induced map on hypersurface homology for a window map
    (inclusion of powers, or truncation quotient) in homological degree i."""
    p = r.p
    if i_max is None:
        i_max = i + 1
    tsrc = TateComplex(r, hyp, src, i_max)
    ttgt = TateComplex(r, hyp, tgt, i_max)
    total = 0
    for n in tsrc.complex.internal_degrees(i):
        z = tsrc.complex.cycles(i, n)
        if not z.shape[0]:
            continue
        tdim = ttgt.complex.dim(i, n)
        zt = np.zeros((z.shape[0], tdim), dtype=np.int64)
        any_block = False
        for (m, ik), (off, w) in tsrc.layout.get((i, n), {}).items():
            pos = ttgt.block(i, n, m, ik)
            if pos is None:
                continue
            toff, tw = pos
            assert tw == w
            zt[:, toff:toff + tw] = z[:, off:off + w]
            any_block = True
        if not any_block or not zt.any():
            continue
        b = ttgt.complex.boundary_rows(i, n)
        stacked = np.concatenate([b, zt], axis=0)
        total += linalg.rank_mod(stacked, p) - linalg.rank_mod(b, p)
    return total
