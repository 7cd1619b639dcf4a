"""Minimal graded free resolutions over the Artinian quotient itself.

Everything here is plain linear algebra over GF(p), organized degree by
degree.  A free module is realized one degree at a time; the kernel of a
differential is a row space; minimal generators of a syzygy module are
the kernel vectors that survive a Nakayama prune against m times the
kernel one degree below.  The next free module is built on exactly those
generators, which keeps every differential inside m and makes the Betti
numbers read off as generator counts.

Two representation choices do most of the work:

* Kernel bases are kept in the form produced by back-substitution, with
  an identity pattern on the free columns.  Coordinates of any vector of
  the kernel with respect to that basis are literally its entries at the
  free columns, so expressing m . (kernel) in kernel coordinates is a
  column selection, not a solve.

* Differentials between free modules are assembled blockwise through a
  cached multiplication tensor (basis of R_delta acting R_d -> R_{d+delta}),
  which turns each generator-degree block into one modular matrix product.

Steps carry a work budget measured in estimated floating point operations.
Kernel dimensions are predicted exactly in advance from the alternating
sum of the piece dimensions built so far (the prefix is exact), so the
budget check is reliable and doubles as an exactness audit after the fact.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import linalg
from .poly import HomogPoly
from .quotient import GradedQuotient

DEFAULT_WORK = 1.2e12


class FreeModule:
    """Graded free module over R with a fixed ordered list of generators.

    Generators are grouped by degree (ascending); within one degree they
    keep their discovery order.  The degree-n slice is the direct sum of
    R_{n-j} pieces, one per generator of degree j, laid out group-major.
    """

    def __init__(self, r: GradedQuotient, graded: Dict[int, int]):
        self.r = r
        self.graded = {d: int(c) for d, c in sorted(graded.items()) if c}
        self.gen_degrees = tuple(
            d for d, c in self.graded.items() for _ in range(c))
        self._layout: Dict[int, tuple] = {}

    def rank(self) -> int:
        return len(self.gen_degrees)

    def layout(self, n: int):
        """Blocks (gen_degree, count, piece_dim, col_offset) of slice n."""
        if n not in self._layout:
            blocks = []
            off = 0
            for d, c in self.graded.items():
                hh = self.r.dim(n - d)
                if hh:
                    blocks.append((d, c, hh, off))
                    off += c * hh
            self._layout[n] = (tuple(blocks), off)
        return self._layout[n]

    def dim(self, n: int) -> int:
        return self.layout(n)[1]

    def degrees(self) -> List[int]:
        if not self.graded:
            return []
        lo = min(self.graded)
        hi = max(self.graded) + self.r.s
        return [n for n in range(lo, hi + 1) if self.dim(n)]

    def apply_var(self, n: int, v: int, rows: np.ndarray) -> np.ndarray:
        """Right action of x_v on coordinate rows, slice n -> n + 1."""
        rows = np.atleast_2d(np.asarray(rows))
        k = rows.shape[0]
        out = np.zeros((k, self.dim(n + 1)), dtype=np.int64)
        if k == 0:
            return out
        tgt = {d: (off, hh) for d, c, hh, off in self.layout(n + 1)[0]}
        for d, c, hh, off in self.layout(n)[0]:
            if d not in tgt:
                continue
            toff, thh = tgt[d]
            m = self.r.mult(n - d, v)
            chunk = rows[:, off:off + c * hh].reshape(k * c, hh)
            img = linalg.matmul_mod(chunk, m, self.r.p)
            out[:, toff:toff + c * thh] = img.reshape(k, c * thh)
        return out

    def unit_slots(self, n: int) -> List[int]:
        """Columns of slice n lying over degree-n generators (the R_0 spots)."""
        for d, c, hh, off in self.layout(n)[0]:
            if d == n:
                return list(range(off, off + c))
        return []


class GradedModule:
    """A finite graded R-module given by per-degree spaces and variable actions.

    ``mults[(n, v)]`` is the matrix of x_v : M_n -> M_{n+1} acting on
    coordinate rows; missing keys mean the zero map.
    """

    def __init__(self, r: GradedQuotient, dims: Dict[int, int], mults):
        self.r = r
        self.p = r.p
        self.dims = {n: int(d) for n, d in dims.items() if d}
        self.mults = mults

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def degrees(self) -> List[int]:
        return sorted(self.dims)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def apply_var(self, n: int, v: int, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(rows))
        m = self.mults.get((n, v))
        if m is None or rows.shape[0] == 0:
            return np.zeros((rows.shape[0], self.dim(n + 1)), dtype=np.int64)
        return linalg.matmul_mod(rows, m, self.p)


def window_module(r: GradedQuotient, lo: int, hi: int) -> GradedModule:
    """The subquotient of R living in internal degrees lo..hi.

    Covers the standard instances: window_module(r, j, r.s) is m^j,
    window_module(r, 0, a - 1) is R/m^a, and [0, 0] is the residue field.
    """
    hi = min(hi, r.s)
    dims = {n: r.dim(n) for n in range(max(lo, 0), hi + 1)}
    mults = {}
    for n in range(max(lo, 0), hi):
        for v in range(r.e):
            mults[(n, v)] = r.mult(n, v)
    return GradedModule(r, dims, mults)


def residue_module(r: GradedQuotient) -> GradedModule:
    return window_module(r, 0, 0)


def free_module_over(r: GradedQuotient) -> GradedModule:
    return window_module(r, 0, r.s)


def presentation_module(r: GradedQuotient, gen_degrees: Sequence[int],
                        relations: Sequence[Sequence[Optional[HomogPoly]]]
                        ) -> GradedModule:
    """Cokernel of the map defined by `relations` into the free module on
    `gen_degrees` (which must be sorted ascending).

    Each relation is a row of homogeneous entries, one per generator,
    all of one common target degree; None marks a zero entry.
    """
    degs = list(gen_degrees)
    if degs != sorted(degs):
        raise ValueError("generator degrees must be sorted ascending")
    counts: Dict[int, int] = {}
    for d in degs:
        counts[d] = counts.get(d, 0) + 1
    free = FreeModule(r, counts)
    # group position of each original generator index
    pos_in_group: List[int] = []
    seen: Dict[int, int] = {}
    for d in degs:
        pos_in_group.append(seen.get(d, 0))
        seen[d] = seen.get(d, 0) + 1

    rel_counts: Dict[int, int] = {}
    rel_reps: Dict[int, List[np.ndarray]] = {}
    for row in relations:
        if len(row) != len(degs):
            raise ValueError("relation row length does not match generators")
        dr = None
        for g, f in enumerate(row):
            if f is not None and not f.is_zero():
                dr = f.degree + degs[g]
                break
        if dr is None:
            continue
        rep = np.zeros(free.dim(dr), dtype=np.int64)
        for g, f in enumerate(row):
            if f is None or f.is_zero():
                continue
            if f.degree + degs[g] != dr:
                raise ValueError("relation row is not homogeneous")
            coords = r.poly_coords(f)
            if coords.size == 0:
                continue
            for d2, c2, hh2, off2 in free.layout(dr)[0]:
                if d2 == degs[g]:
                    start = off2 + pos_in_group[g] * hh2
                    rep[start:start + hh2] = coords
                    break
        rel_counts[dr] = rel_counts.get(dr, 0) + 1
        rel_reps.setdefault(dr, []).append(rep)

    relfree = FreeModule(r, rel_counts)
    reps = {d: np.array(rows, dtype=np.int64) for d, rows in rel_reps.items()}

    dims: Dict[int, int] = {}
    embeds: Dict[int, np.ndarray] = {}
    projs: Dict[int, linalg.QuotientProjector] = {}
    for n in free.degrees():
        amb = np.eye(free.dim(n), dtype=np.int64)
        sub = free_map_matrix(r, relfree, free, reps, n) if relfree.rank() \
            else np.zeros((0, free.dim(n)), dtype=np.int64)
        proj = linalg.QuotientProjector(amb, sub, r.p)
        projs[n] = proj
        dims[n] = proj.dim
        embeds[n] = amb[proj.comp_positions]
    mults = {}
    for n in free.degrees():
        if dims.get(n, 0) == 0 or dims.get(n + 1, 0) == 0:
            continue
        for v in range(r.e):
            img = free.apply_var(n, v, embeds[n])
            mults[(n, v)] = projs[n + 1].coords(img).astype(np.int64)
    return GradedModule(r, dims, mults)


# multiplication tensors, cached per ring: key (delta, d) gives the stack of
# matrices R_d -> R_{d+delta} indexed by the standard basis of R_delta
_TENSORS: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _mult_tensor(r: GradedQuotient, delta: int, d: int) -> np.ndarray:
    store = _TENSORS.setdefault(r, {})
    key = (delta, d)
    if key not in store:
        if delta == 0:
            store[key] = np.eye(r.dim(d), dtype=np.int64)[None, :, :]
        else:
            store[key] = np.stack([
                r.mono_mult_matrix(d, m) for m in r.std_monomials(delta)])
    return store[key]


_CHUNK_CELLS = 16_000_000


def free_map_matrix(r: GradedQuotient, src: FreeModule, tgt: FreeModule,
                    reps: Dict[int, np.ndarray], n: int) -> np.ndarray:
    """Degree-n matrix of the graded map src -> tgt with generator images `reps`.

    reps[d] holds the images of the degree-d generators of src as rows in
    tgt coordinates at degree d.
    """
    p = r.p
    out = np.zeros((src.dim(n), tgt.dim(n)), dtype=np.int64)
    tgt_here = {d2: (off2, hh2) for d2, c2, hh2, off2 in tgt.layout(n)[0]}
    for d, c, hh, off in src.layout(n)[0]:
        W = reps.get(d)
        if W is None:
            continue
        for d2, c2, hd, off2 in tgt.layout(d)[0]:
            if d2 not in tgt_here:
                continue
            toff, hh2 = tgt_here[d2]
            W3 = np.asarray(W[:, off2:off2 + c2 * hd]).reshape(c, c2, hd)
            if not W3.any():
                continue
            S = _mult_tensor(r, d - d2, n - d)
            # chunk source generators so the 4-axis intermediate stays small
            step = max(1, _CHUNK_CELLS // max(1, c2 * hh * hh2))
            for g0 in range(0, c, step):
                g1 = min(c, g0 + step)
                A = W3[g0:g1].reshape((g1 - g0) * c2, hd)
                C = linalg.matmul_mod(A, S.reshape(hd, hh * hh2), p)
                C = C.reshape(g1 - g0, c2, hh, hh2).transpose(0, 2, 1, 3)
                out[off + g0 * hh:off + g1 * hh, toff:toff + c2 * hh2] = \
                    C.reshape((g1 - g0) * hh, c2 * hh2)
    return out


def _mono_action(mod: GradedModule, d: int, mono: tuple) -> np.ndarray:
    """Matrix of multiplication by a monomial on the module, M_d -> M_{d+|mono|}."""
    cache = getattr(mod, "_mono_cache", None)
    if cache is None:
        cache = mod._mono_cache = {}
    key = (d, mono)
    if key in cache:
        return cache[key]
    deg = sum(mono)
    if deg == 0:
        out = np.eye(mod.dim(d), dtype=np.int64)
    else:
        v = next(i for i, a in enumerate(mono) if a)
        rest = tuple(a - (1 if i == v else 0) for i, a in enumerate(mono))
        prev = _mono_action(mod, d, rest)
        out = mod.apply_var(d + deg - 1, v, prev)
    cache[key] = out
    return out


def module_eval_matrix(mod: GradedModule, src: FreeModule,
                       reps: Dict[int, np.ndarray], n: int) -> np.ndarray:
    """Degree-n matrix of src -> mod (generic module target, small scale)."""
    out = np.zeros((src.dim(n), mod.dim(n)), dtype=np.int64)
    for d, c, hh, off in src.layout(n)[0]:
        W = reps.get(d)
        if W is None:
            continue
        for j, mono in enumerate(mod.r.std_monomials(n - d)):
            act = _mono_action(mod, d, mono)
            cols = linalg.matmul_mod(np.asarray(W, dtype=np.int64), act, mod.p)
            out[off + np.arange(c) * hh + j] = cols
    return out


def _kernel_rows(a: np.ndarray, p: int):
    """Kernel of the row map given by `a` (rows u with u @ a = 0), plus the
    free columns carrying the identity pattern of the basis."""
    m = a.shape[0]
    # rref reads its input in column panels, so the transposed view is fine
    # and skipping the copy matters at the sizes the later steps reach
    r, piv, red = linalg.rref(a.T, p)
    pivset = set(piv)
    free = [c for c in range(m) if c not in pivset]
    dtype = np.int32 if p <= 46337 else np.int64
    k = np.zeros((len(free), m), dtype=dtype)
    for t, c in enumerate(free):
        k[t, c] = 1
    if r and free:
        k[:, list(piv)] = np.mod(-red[:, free].T, p)
    return k, free


_PRUNE_CELLS = 30_000_000


def _row_space_pivots(c: np.ndarray, p: int):
    """Pivot columns of rref(c), row-chunked when c is large.

    Chunking replaces rows already swept by their echelon basis, which
    keeps the row space and therefore the pivot set identical while the
    elimination workspace stays bounded.
    """
    rows, cols = c.shape
    if rows * cols <= _PRUNE_CELLS:
        return linalg.rref(c, p)[1]
    step = max(cols, _PRUNE_CELLS // max(1, cols))
    basis = None
    piv = ()
    for lo in range(0, rows, step):
        part = c[lo:lo + step]
        stack = part if basis is None else np.vstack([basis, part])
        _, piv, basis = linalg.rref(stack, p)
    return piv


class ResolutionSlice:
    """Prefix of the minimal free resolution of a graded module over R.

    graded[i] maps generator degree -> count for the i-th free module;
    reps[i] holds the generator images (rows over the previous step's
    coordinates, the module itself for i = 0).  With keep_maps=True the
    full differential matrices are retained per degree for comparison
    lifts.  truncated is set when the work budget stopped the computation
    before the requested cutoff.
    """

    def __init__(self, r: GradedQuotient, module: GradedModule, cutoff: int,
                 keep_maps: bool = False, work_limit: Optional[float] = None,
                 audit: bool = True):
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        self.r = r
        self.p = r.p
        self.module = module
        self.cutoff = cutoff
        self.keep_maps = keep_maps
        self.audit = audit
        self.graded: List[Dict[int, int]] = []
        self.reps: List[Dict[int, np.ndarray]] = []
        self.frees: List[FreeModule] = []
        self.evs: List[Dict[int, np.ndarray]] = []
        self.truncated = False
        self.work_spent = 0.0
        self._run(DEFAULT_WORK if work_limit is None else float(work_limit))

    # ---- public queries -------------------------------------------------

    @property
    def depth_computed(self) -> int:
        """Largest i with betti(i) known."""
        return len(self.graded) - 1

    def betti(self, i: int) -> int:
        if i < len(self.graded):
            return sum(self.graded[i].values())
        if not self.truncated:
            return 0
        raise ValueError(
            "step %d not computed; the work budget stopped the resolution "
            "at step %d" % (i, self.depth_computed))

    def betti_graded(self, i: int) -> Dict[int, int]:
        if i < len(self.graded):
            return dict(self.graded[i])
        if not self.truncated:
            return {}
        raise ValueError("step %d not computed" % i)

    def betti_list(self, n: Optional[int] = None) -> List[int]:
        hi = self.depth_computed if n is None else n
        return [self.betti(i) for i in range(hi + 1)]

    def differential_matrix(self, i: int, n: int) -> np.ndarray:
        """Degree-n matrix of d_i, reassembled when it was not retained."""
        if not (0 <= i <= self.depth_computed):
            raise ValueError("no differential at step %d" % i)
        if i < len(self.evs) and n in self.evs[i]:
            return self.evs[i][n]
        if i == 0:
            return module_eval_matrix(self.module, self.frees[0],
                                      self.reps[0], n)
        return free_map_matrix(self.r, self.frees[i], self.frees[i - 1],
                               self.reps[i], n)

    def differential_entries(self, i: int):
        """Differential d_i as a generator-by-generator matrix of polynomials.

        Only sensible at small scale; i >= 1."""
        if not (1 <= i < len(self.graded)):
            raise ValueError("no differential stored at step %d" % i)
        src = self.frees[i]
        tgt = self.frees[i - 1]
        rows = []
        for gi, dg in enumerate(src.gen_degrees):
            rep = self.reps[i][dg]
            # position of gi within its degree group
            before = sum(1 for d in src.gen_degrees[:gi] if d == dg)
            row = []
            u = rep[before]
            for d2, c2, hh2, off2 in tgt.layout(dg)[0]:
                for t in range(c2):
                    coords = u[off2 + t * hh2: off2 + (t + 1) * hh2]
                    row.append(self.r.rep_poly(dg - d2, coords)
                               if np.asarray(coords).any() else None)
            rows.append(row)
        return rows

    # ---- construction ---------------------------------------------------

    def _predicted_kernel_dim(self, i: int, n: int) -> int:
        """dim ker(d_i)_n from the alternating sum over the exact prefix."""
        total = 0
        sign = 1
        for j in range(i, -1, -1):
            total += sign * self.frees[j].dim(n)
            sign = -sign
        total += sign * self.module.dim(n)
        return total

    def _step_estimate(self, i: int) -> float:
        """Rough flop count for the sweep computing step i + 1."""
        fi = self.frees[i]
        amb = self.frees[i - 1] if i else self.module
        cost = 0.0
        prev_k = 0
        for n in fi.degrees():
            a, b = amb.dim(n), fi.dim(n)
            cost += float(min(a, b)) ** 2 * max(a, b)      # kernel rref
            k = max(0, self._predicted_kernel_dim(i, n))
            rows = self.r.e * prev_k
            cost += float(min(rows, k)) ** 2 * max(rows, k)  # prune rref
            cost += 2.0 * rows * fi.dim(n)                   # images
            prev_k = k
        return cost

    def _module_generators(self):
        mod = self.module
        counts: Dict[int, int] = {}
        reps: Dict[int, np.ndarray] = {}
        degs = mod.degrees()
        for n in degs:
            dn = mod.dim(n)
            if mod.dim(n - 1):
                low = np.vstack([
                    mod.mults.get((n - 1, v),
                                  np.zeros((mod.dim(n - 1), dn), dtype=np.int64))
                    for v in range(self.r.e)])
            else:
                low = np.zeros((0, dn), dtype=np.int64)
            _, piv, _ = linalg.rref(low, self.p)
            newpos = [t for t in range(dn) if t not in set(piv)]
            if newpos:
                counts[n] = len(newpos)
                reps[n] = np.eye(dn, dtype=np.int64)[newpos]
        self.graded.append(counts)
        self.reps.append(reps)
        self.frees.append(FreeModule(self.r, counts))

    def _run(self, work_limit: float):
        self._module_generators()
        for i in range(self.cutoff):
            fi = self.frees[i]
            if fi.rank() == 0:
                # module resolved completely; everything beyond is zero
                while len(self.graded) <= self.cutoff:
                    self.graded.append({})
                    self.reps.append({})
                    self.frees.append(FreeModule(self.r, {}))
                return
            est = self._step_estimate(i)
            if self.work_spent + est > work_limit:
                self.truncated = True
                return
            self.work_spent += est
            self._sweep(i)

    def _sweep(self, i: int):
        r = self.r
        p = self.p
        fi = self.frees[i]
        amb = self.frees[i - 1] if i else self.module
        assemble = (lambda n: free_map_matrix(r, fi, amb, self.reps[i], n)) \
            if i else (lambda n: module_eval_matrix(amb, fi, self.reps[i], n))
        counts: Dict[int, int] = {}
        reps: Dict[int, np.ndarray] = {}
        evs: Dict[int, np.ndarray] = {}
        prev_ker: Optional[np.ndarray] = None
        degs = fi.degrees()
        for n in range(degs[0], degs[-1] + 1):
            if fi.dim(n) == 0:
                prev_ker = None
                continue
            ev = assemble(n)
            if self.keep_maps:
                evs[n] = ev
            ker, free_cols = _kernel_rows(ev, p)
            if self.audit and ker.shape[0] != self._predicted_kernel_dim(i, n):
                raise AssertionError(
                    "exactness audit failed at step %d degree %d" % (i, n))
            slots = fi.unit_slots(n)
            if slots and ker[:, slots].any():
                raise AssertionError(
                    "minimality audit failed at step %d degree %d" % (i, n))
            if prev_ker is not None and prev_ker.shape[0]:
                small = self.audit and \
                    prev_ker.shape[0] * r.e * fi.dim(n) <= 4_000_000
                if small:
                    imgs = np.vstack([
                        fi.apply_var(n - 1, v, prev_ker) for v in range(r.e)])
                    C = imgs[:, free_cols]
                    if ker.shape[0]:
                        back = linalg.matmul_mod(
                            C, np.asarray(ker, dtype=np.int64), p)
                        if not np.array_equal(back, np.mod(imgs, p)):
                            raise AssertionError(
                                "kernel closure audit failed at step %d "
                                "degree %d" % (i, n))
                    del imgs
                else:
                    # column-select variable by variable; the full-width
                    # image stack at this size would dominate peak memory
                    narrow = linalg.PrimeField(p).dtype
                    blocks = []
                    for v in range(r.e):
                        full = fi.apply_var(n - 1, v, prev_ker)
                        blocks.append(np.asarray(full[:, free_cols],
                                                 dtype=narrow))
                        del full
                    C = np.vstack(blocks)
                    del blocks
            else:
                C = np.zeros((0, ker.shape[0]), dtype=np.int64)
            piv = _row_space_pivots(C, p)
            newpos = [t for t in range(ker.shape[0]) if t not in set(piv)]
            if newpos:
                counts[n] = len(newpos)
                reps[n] = np.asarray(ker[newpos], dtype=np.int64)
            prev_ker = ker
        self.graded.append(counts)
        self.reps.append(reps)
        self.frees.append(FreeModule(r, counts))
        if self.keep_maps:
            while len(self.evs) <= i:
                self.evs.append({})
            self.evs[i] = evs


def minimal_resolution(r: GradedQuotient, module: GradedModule, cutoff: int = 8,
                       **kw) -> ResolutionSlice:
    return ResolutionSlice(r, module, cutoff, **kw)


@dataclass
class ModuleMap:
    """A degreewise map of graded R-modules; missing degrees are zero."""
    src: GradedModule
    tgt: GradedModule
    mats: Dict[int, np.ndarray] = field(default_factory=dict)

    def mat(self, n: int) -> np.ndarray:
        m = self.mats.get(n)
        if m is None:
            return np.zeros((self.src.dim(n), self.tgt.dim(n)), dtype=np.int64)
        return m


def window_map(r: GradedQuotient, src_lo: int, src_hi: int,
               tgt_lo: int, tgt_hi: int) -> ModuleMap:
    """Identity-on-overlap map between two windows of R.

    Both the inclusion of a smaller power into a larger one and the
    natural quotient map between truncations are of this shape, because
    windows share the coordinate system of R itself.
    """
    src = window_module(r, src_lo, src_hi)
    tgt = window_module(r, tgt_lo, tgt_hi)
    mats = {}
    for n in src.degrees():
        if tgt.dim(n):
            mats[n] = np.eye(r.dim(n), dtype=np.int64)
    return ModuleMap(src, tgt, mats)


def induced_tor_rank_R(r: GradedQuotient, mmap: ModuleMap, i: int,
                       work_limit: Optional[float] = None,
                       res_src: Optional[ResolutionSlice] = None,
                       res_tgt: Optional[ResolutionSlice] = None) -> int:
    """Rank of Tor_i(src, k) -> Tor_i(tgt, k) induced by the module map.

    The map is lifted through both minimal resolutions one homological
    step at a time, solving for each source generator's image inside the
    target resolution degreewise.  A failed solve means the resolutions
    are inconsistent and raises immediately.  The induced map on Tor is
    the generator-level component of the lift (everything else lies in m),
    block diagonal over internal degrees.
    """
    rs = res_src if res_src is not None else ResolutionSlice(
        r, mmap.src, i, work_limit=work_limit)
    rt = res_tgt if res_tgt is not None else ResolutionSlice(
        r, mmap.tgt, i, work_limit=work_limit)
    for res, tag in ((rs, "source"), (rt, "target")):
        if res.depth_computed < i:
            raise ValueError(
                "the %s resolution stopped at step %d, before step %d" %
                (tag, res.depth_computed, i))

    phi: Dict[int, np.ndarray] = {n: mmap.mat(n) for n in mmap.src.degrees()}
    rank = 0
    for j in range(i + 1):
        solved: Dict[int, np.ndarray] = {}
        for dg, cnt in sorted(rs.graded[j].items()):
            U = np.asarray(rs.reps[j][dg], dtype=np.int64)
            prev = phi.get(dg)
            if prev is None or prev.size == 0:
                Y = np.zeros((cnt, rt.frees[j - 1].dim(dg) if j else
                              mmap.tgt.dim(dg)), dtype=np.int64)
            else:
                Y = linalg.matmul_mod(U, prev, r.p)
            D = rt.differential_matrix(j, dg) if rt.frees[j].dim(dg) else None
            if D is None or D.shape[0] == 0:
                if Y.any():
                    raise AssertionError(
                        "comparison lift failed at step %d degree %d" % (j, dg))
                solved[dg] = np.zeros((cnt, rt.frees[j].dim(dg)),
                                      dtype=np.int64)
                continue
            X = linalg.solve_right(np.asarray(D, dtype=np.int64).T, Y.T, r.p)
            if X is None:
                raise AssertionError(
                    "comparison lift failed at step %d degree %d" % (j, dg))
            solved[dg] = np.mod(X.T, r.p)
        if j == i:
            for dg, rows in solved.items():
                slots = rt.frees[i].unit_slots(dg)
                if slots and rows.shape[0]:
                    rank += linalg.rank_mod(rows[:, slots], r.p)
            return rank
        phi = {n: free_map_matrix(r, rs.frees[j], rt.frees[j], solved, n)
               for n in rs.frees[j].degrees()}
    return rank
