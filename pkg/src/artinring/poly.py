"""Dense homogeneous polynomials over GF(p).

A monomial in e variables is an exponent tuple.  For each degree d the
monomials are listed once and for all in descending graded reverse
lexicographic order, and a homogeneous polynomial is a dense coefficient
vector over that list.  All the heavy structure downstream (multiplication
matrices, colon kernels, linear changes of variables) reduces to index
arithmetic against these cached lists.
"""

from __future__ import annotations

import math
import re
from functools import lru_cache

import numpy as np


def num_monomials(nvars: int, degree: int) -> int:
    if degree < 0:
        return 0
    return math.comb(nvars - 1 + degree, degree)


def _compositions(nvars, degree):
    if nvars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _compositions(nvars - 1, degree - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomials(nvars: int, degree: int) -> tuple:
    """All exponent tuples of the given degree, descending grevlex.

    Descending grevlex on a fixed degree coincides with ascending
    lexicographic order on the reversed tuples.
    """
    if degree < 0:
        return ()
    return tuple(sorted(_compositions(nvars, degree), key=lambda m: m[::-1]))


@lru_cache(maxsize=None)
def monomial_index(nvars: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomials(nvars, degree))}


@lru_cache(maxsize=None)
def shift_index_map(nvars: int, degree: int, mono: tuple) -> np.ndarray:
    """Index map of multiplication by `mono`: position i in degree d goes to
    position map[i] in degree d + deg(mono)."""
    target = monomial_index(nvars, degree + sum(mono))
    out = np.empty(num_monomials(nvars, degree), dtype=np.int64)
    for i, m in enumerate(monomials(nvars, degree)):
        out[i] = target[tuple(a + b for a, b in zip(m, mono))]
    return out


def variable_mono(nvars: int, v: int) -> tuple:
    return tuple(1 if i == v else 0 for i in range(nvars))


class HomogPoly:
    """Homogeneous polynomial: degree plus a dense coefficient vector."""

    __slots__ = ("p", "nvars", "degree", "vec")

    def __init__(self, p: int, nvars: int, degree: int, vec):
        self.p = p
        self.nvars = nvars
        self.degree = degree
        v = np.asarray(vec, dtype=np.int64) % p
        if v.shape != (num_monomials(nvars, degree),):
            raise ValueError("coefficient vector has the wrong length")
        self.vec = v

    @classmethod
    def zero(cls, p, nvars, degree):
        return cls(p, nvars, degree, np.zeros(num_monomials(nvars, degree), dtype=np.int64))

    @classmethod
    def from_terms(cls, p, nvars, terms):
        """terms: iterable of (exponent tuple, coefficient)."""
        terms = list(terms)
        if not terms:
            raise ValueError("cannot infer the degree of an empty term list")
        degree = sum(terms[0][0])
        out = cls.zero(p, nvars, degree)
        idx = monomial_index(nvars, degree)
        for mono, coeff in terms:
            if sum(mono) != degree:
                raise ValueError("inhomogeneous term list")
            out.vec[idx[tuple(mono)]] = (out.vec[idx[tuple(mono)]] + coeff) % p
        return out

    @classmethod
    def monomial(cls, p, nvars, mono, coeff=1):
        return cls.from_terms(p, nvars, [(mono, coeff)])

    def is_zero(self) -> bool:
        return not self.vec.any()

    def terms(self):
        ms = monomials(self.nvars, self.degree)
        for i in np.nonzero(self.vec)[0]:
            yield ms[int(i)], int(self.vec[i])

    def _check(self, other):
        if (self.p, self.nvars) != (other.p, other.nvars):
            raise ValueError("mixed polynomial rings")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("cannot add different degrees")
        return HomogPoly(self.p, self.nvars, self.degree, self.vec + other.vec)

    def __sub__(self, other):
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("cannot subtract different degrees")
        return HomogPoly(self.p, self.nvars, self.degree, self.vec - other.vec)

    def __neg__(self):
        return HomogPoly(self.p, self.nvars, self.degree, -self.vec)

    def scale(self, c: int):
        return HomogPoly(self.p, self.nvars, self.degree, self.vec * (int(c) % self.p))

    def __mul__(self, other):
        self._check(other)
        out = HomogPoly.zero(self.p, self.nvars, self.degree + other.degree)
        for mono, coeff in other.terms():
            smap = shift_index_map(self.nvars, self.degree, mono)
            np.add.at(out.vec, smap, self.vec * coeff)
        out.vec %= self.p
        return out

    def times_monomial(self, mono, coeff=1):
        out = HomogPoly.zero(self.p, self.nvars, self.degree + sum(mono))
        smap = shift_index_map(self.nvars, self.degree, tuple(mono))
        out.vec[smap] = self.vec * (int(coeff) % self.p) % self.p
        return out

    def evaluate(self, point) -> int:
        """Value at a point, exact in Python ints then reduced."""
        total = 0
        for mono, coeff in self.terms():
            v = coeff
            for a, m in zip(point, mono):
                if m:
                    v *= pow(int(a), m, self.p)
            total += v
        return total % self.p

    def substitute_linear(self, a: np.ndarray) -> "HomogPoly":
        """Apply the change of variables X_i -> sum_j a[i, j] x_j."""
        s = sym_power_matrix(_mat_key(a, self.p), self.degree, self.nvars, self.p)
        return HomogPoly(self.p, self.nvars, self.degree,
                         (s @ self.vec) % self.p)

    def normalized(self) -> "HomogPoly":
        """Scale so the first nonzero coefficient (grevlex order) is 1."""
        nz = np.nonzero(self.vec)[0]
        if nz.size == 0:
            return self
        inv = pow(int(self.vec[nz[0]]), self.p - 2, self.p)
        return self.scale(inv)

    def __eq__(self, other):
        return (isinstance(other, HomogPoly)
                and (self.p, self.nvars, self.degree) == (other.p, other.nvars, other.degree)
                and np.array_equal(self.vec, other.vec))

    def __hash__(self):
        return hash((self.p, self.nvars, self.degree, self.vec.tobytes()))

    def __repr__(self):
        names = default_names(self.nvars)
        return f"HomogPoly({emit_poly(self, names)!r} mod {self.p})"


def _mat_key(a: np.ndarray, p: int) -> tuple:
    a = np.asarray(a, dtype=np.int64) % p
    return tuple(map(tuple, a.tolist()))


@lru_cache(maxsize=None)
def sym_power_matrix(mat_key: tuple, degree: int, nvars: int, p: int) -> np.ndarray:
    """Matrix of the substitution X_i -> sum_j a[i, j] x_j on degree-d forms.

    Column for each source monomial holds the coefficient vector of the
    product of the substituted linear forms.  Computed once per (matrix,
    degree) and cached; the caller goes through HomogPoly.substitute_linear.
    """
    a = np.asarray(mat_key, dtype=np.int64)
    n = num_monomials(nvars, degree)
    out = np.zeros((n, n), dtype=np.int64)
    if degree == 0:
        return np.ones((1, 1), dtype=np.int64)
    # powers of each substituted linear form, as homogeneous polynomials
    lin = [HomogPoly(p, nvars, 1, a[i]) for i in range(nvars)]
    powers = []
    for i in range(nvars):
        row = [HomogPoly(p, nvars, 0, [1])]
        for _ in range(degree):
            row.append(row[-1] * lin[i])
        powers.append(row)
    for col, mono in enumerate(monomials(nvars, degree)):
        prod = HomogPoly(p, nvars, 0, [1])
        for i, m in enumerate(mono):
            if m:
                prod = prod * powers[i][m]
        out[:, col] = prod.vec
    return out


# ---------------------------------------------------------------------------
# ring text format

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"


def default_names(nvars: int):
    if nvars <= 3:
        return tuple("xyz"[:nvars])
    return tuple(f"x{i + 1}" for i in range(nvars))


def parse_poly(text: str, names, p: int) -> HomogPoly:
    """Parse `term(+term|-term)*`, term = [coeff*]var(^exp)?(*var(^exp)?)*."""
    nvars = len(names)
    pos = {n: i for i, n in enumerate(names)}
    compact = text.replace(" ", "").replace("\t", "")
    if not compact:
        raise ValueError("empty polynomial")
    chunks = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(chunks) != compact:
        raise ValueError(f"cannot tokenize polynomial {text!r}")
    terms = []
    for chunk in chunks:
        sign = 1
        body = chunk
        if body[0] in "+-":
            sign = -1 if body[0] == "-" else 1
            body = body[1:]
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        expo = [0] * nvars
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"empty factor in term {chunk!r}")
            if factor.isdigit():
                coeff = coeff * int(factor)
                continue
            m = re.fullmatch(rf"({_NAME})(?:\^(\d+))?", factor)
            if not m:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            name, exp = m.group(1), int(m.group(2) or 1)
            if name not in pos:
                raise ValueError(f"unknown variable {name!r}")
            expo[pos[name]] += exp
        terms.append((tuple(expo), coeff))
    degrees = {sum(m) for m, _ in terms}
    if len(degrees) != 1:
        raise ValueError(f"inhomogeneous polynomial {text!r}")
    return HomogPoly.from_terms(p, nvars, terms)


def emit_poly(f: HomogPoly, names) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for mono, coeff in f.terms():
        # symmetric representative reads better for random large-p data
        c = coeff if coeff <= f.p // 2 else coeff - f.p
        factors = []
        for name, m in zip(names, mono):
            if m == 1:
                factors.append(name)
            elif m > 1:
                factors.append(f"{name}^{m}")
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def parse_ring_text(text: str):
    """Returns (p, names, gens).  Lines: `p <prime>`, `vars <name>+`,
    `gen <poly>` repeated.  Blank lines and `#` comments are skipped."""
    p = None
    names = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        if head == "p":
            if p is not None:
                raise ValueError(f"line {lineno}: duplicate modulus line")
            p = int(rest.strip())
        elif head == "vars":
            if names is not None:
                raise ValueError(f"line {lineno}: duplicate vars line")
            names = tuple(rest.split())
            if len(set(names)) != len(names) or not names:
                raise ValueError(f"line {lineno}: bad variable list")
            for n in names:
                if not re.fullmatch(_NAME, n):
                    raise ValueError(f"line {lineno}: bad variable name {n!r}")
        elif head == "gen":
            if p is None or names is None:
                raise ValueError(f"line {lineno}: gen before p/vars")
            gens.append(parse_poly(rest, names, p))
        else:
            raise ValueError(f"line {lineno}: unrecognized directive {head!r}")
    if p is None or names is None:
        raise ValueError("ring text needs `p` and `vars` lines")
    return p, names, gens


def emit_ring_text(p: int, names, gens, header=()) -> str:
    lines = [f"# {h}" for h in header]
    lines.append(f"p {p}")
    lines.append("vars " + " ".join(names))
    for g in gens:
        lines.append("gen " + emit_poly(g, names))
    return "\n".join(lines) + "\n"
