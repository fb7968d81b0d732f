"""Exact linear algebra over the Gaussian integers.

Entries are :class:`GaussianInt` pairs of Python ints, so nothing here ever
touches floating point.  Rank uses fraction-free (Bareiss) elimination and the
characteristic polynomial uses Faddeev-LeVerrier, whose only divisions are by
the integers ``1..n`` and are checked for exactness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import HasUndirectedEdge, NonRealCoefficient
from .graph import ARC, MixedGraph


class GaussianInt(NamedTuple):
    re: int
    im: int = 0

    def __add__(self, other):
        o = _coerce(other)
        return GaussianInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        return GaussianInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        o = _coerce(other)
        return GaussianInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def conjugate(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def exact_div(self, other) -> GaussianInt:
        """Quotient in Z[i]; raises ``ArithmeticError`` if it is not exact."""
        o = _coerce(other)
        d = o.norm()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian integer")
        a = self.re * o.re + self.im * o.im
        b = self.im * o.re - self.re * o.im
        if a % d or b % d:
            raise ArithmeticError(f"{self} is not divisible by {o}")
        return GaussianInt(a // d, b // d)

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __repr__(self):
        if self.im == 0:
            return f"{self.re}"
        if self.re == 0:
            return f"{self.im}i"
        return f"({self.re}{self.im:+d}i)"


def _coerce(x) -> GaussianInt:
    if isinstance(x, GaussianInt):
        return x
    if isinstance(x, tuple):
        return GaussianInt(*x)
    if isinstance(x, int):
        return GaussianInt(x, 0)
    raise TypeError(f"cannot use {type(x).__name__} as a Gaussian integer")


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)
MINUS_I = GaussianInt(0, -1)


@dataclass(frozen=True)
class GaussianIntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[GaussianInt, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> GaussianIntMatrix:
        ent = tuple(tuple(_coerce(x) for x in row) for row in rows)
        ncols = len(ent[0]) if ent else 0
        if any(len(r) != ncols for r in ent):
            raise ValueError("ragged matrix")
        return cls(len(ent), ncols, ent)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> GaussianIntMatrix:
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    def __getitem__(self, ij: tuple[int, int]) -> GaussianInt:
        i, j = ij
        return self.entries[i][j]

    def conjugate_transpose(self) -> GaussianIntMatrix:
        return GaussianIntMatrix(
            self.cols,
            self.rows,
            tuple(
                tuple(self.entries[i][j].conjugate() for i in range(self.rows))
                for j in range(self.cols)
            ),
        )

    def is_hermitian(self) -> bool:
        return self.rows == self.cols and self == self.conjugate_transpose()

    def scale(self, z) -> GaussianIntMatrix:
        z = _coerce(z)
        return GaussianIntMatrix(
            self.rows, self.cols, tuple(tuple(z * x for x in row) for row in self.entries)
        )

    def tolist(self) -> list[list[tuple[int, int]]]:
        return [[(x.re, x.im) for x in row] for row in self.entries]


@dataclass(frozen=True)
class CharPoly:
    """``f(x) = sum_i coeffs[i] * x**(n - i)`` with integer coefficients."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for a in self.coeffs:
            acc = acc * x + a
        return acc

    def top_nonzero_index(self) -> int:
        """Largest ``i`` with ``coeffs[i] != 0``; equals the rank for Hermitian input."""
        return max(i for i, a in enumerate(self.coeffs) if a != 0)


# -- construction ------------------------------------------------------------


def hermitian_adjacency(g: MixedGraph) -> GaussianIntMatrix:
    """1 for an undirected edge, ``i`` at (u, v) and ``-i`` at (v, u) for an arc u -> v."""
    rows = [[ZERO] * g.n for _ in range(g.n)]
    for e in g.edges:
        if e.kind is ARC:
            rows[e.u][e.v] = I
            rows[e.v][e.u] = MINUS_I
        else:
            rows[e.u][e.v] = ONE
            rows[e.v][e.u] = ONE
    return GaussianIntMatrix(g.n, g.n, tuple(tuple(r) for r in rows))


def skew_adjacency(g: MixedGraph) -> GaussianIntMatrix:
    """Skew-adjacency matrix of an oriented graph (every edge an arc)."""
    rows = [[ZERO] * g.n for _ in range(g.n)]
    for e in g.edges:
        if e.kind is not ARC:
            raise HasUndirectedEdge(f"edge {e.key} is undirected")
        rows[e.u][e.v] = ONE
        rows[e.v][e.u] = GaussianInt(-1, 0)
    return GaussianIntMatrix(g.n, g.n, tuple(tuple(r) for r in rows))


def hermitian_equals_i_skew(g: MixedGraph) -> bool:
    return hermitian_adjacency(g) == skew_adjacency(g).scale(I)


# -- rank ------------------------------------------------------------------------


def _rank_pairs(a: list[list[tuple[int, int]]], ncols: int) -> int:
    """Bareiss elimination in place on rows of (re, im) pairs."""
    nrows = len(a)
    r = 0
    pr, pi = 1, 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = None
        for k in range(r, nrows):
            x = a[k][col]
            if x[0] or x[1]:
                piv = k
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        cr, ci = a[r][col]
        top = a[r]
        dn = pr * pr + pi * pi
        for k in range(r + 1, nrows):
            row = a[k]
            fr, fi = row[col]
            new = row[:]
            new[col] = (0, 0)
            for j in range(col + 1, ncols):
                xr, xi = row[j]
                yr, yi = top[j]
                # piv * x - f * y
                nr = cr * xr - ci * xi - (fr * yr - fi * yi)
                ni = cr * xi + ci * xr - (fr * yi + fi * yr)
                if pi == 0:
                    if pr != 1:
                        nr //= pr
                        ni //= pr
                else:
                    tr = nr * pr + ni * pi
                    ti = ni * pr - nr * pi
                    nr, ni = tr // dn, ti // dn
                new[j] = (nr, ni)
            a[k] = new
        pr, pi = cr, ci
        r += 1
    return r


def rank_exact(m: GaussianIntMatrix) -> int:
    """Exact rank over the Gaussian rationals."""
    a = [[(x.re, x.im) for x in row] for row in m.entries]
    return _rank_pairs(a, m.cols)


def hermitian_rank(g: MixedGraph) -> int:
    """``rank_exact(hermitian_adjacency(g))`` without building the wrapper objects."""
    n = g.n
    a = [[(0, 0)] * n for _ in range(n)]
    for e in g.edges:
        if e.kind is ARC:
            a[e.u][e.v] = (0, 1)
            a[e.v][e.u] = (0, -1)
        else:
            a[e.u][e.v] = (1, 0)
            a[e.v][e.u] = (1, 0)
    return _rank_pairs(a, n)


# -- characteristic polynomial -----------------------------------------------------


def _sparse_rows(m: GaussianIntMatrix) -> list[list[tuple[int, int, int]]]:
    return [[(j, x.re, x.im) for j, x in enumerate(row) if x] for row in m.entries]


def charpoly_exact(m: GaussianIntMatrix) -> CharPoly:
    """Faddeev-LeVerrier over Z[i]; coefficients must come out real."""
    if m.rows != m.cols:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = m.rows
    rows = _sparse_rows(m)
    coeffs_re = [1]
    coeffs_im = [0]
    # prev = M_{k-1} as separate real / imaginary dense matrices
    prev_re = [[0] * n for _ in range(n)]
    prev_im = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        ar, ai = coeffs_re[-1], coeffs_im[-1]
        # M_k = A M_{k-1} + a_{k-1} I
        cur_re = [[0] * n for _ in range(n)]
        cur_im = [[0] * n for _ in range(n)]
        for i in range(n):
            ri = cur_re[i]
            ii = cur_im[i]
            for l, hr, hi in rows[i]:
                pr_l = prev_re[l]
                pi_l = prev_im[l]
                for j in range(n):
                    xr = pr_l[j]
                    xi = pi_l[j]
                    if xr or xi:
                        ri[j] += hr * xr - hi * xi
                        ii[j] += hr * xi + hi * xr
            ri[i] += ar
            ii[i] += ai
        # a_k = -tr(A M_k) / k
        tr_re = tr_im = 0
        for i in range(n):
            for l, hr, hi in rows[i]:
                xr = cur_re[l][i]
                xi = cur_im[l][i]
                tr_re += hr * xr - hi * xi
                tr_im += hr * xi + hi * xr
        if tr_re % k or tr_im % k:
            raise ArithmeticError("inexact Faddeev-LeVerrier division")
        coeffs_re.append(-tr_re // k)
        coeffs_im.append(-tr_im // k)
        prev_re, prev_im = cur_re, cur_im
    if any(coeffs_im):
        raise NonRealCoefficient(f"imaginary parts {coeffs_im}")
    return CharPoly(tuple(coeffs_re))


def hermitian_charpoly(g: MixedGraph) -> CharPoly:
    return charpoly_exact(hermitian_adjacency(g))
