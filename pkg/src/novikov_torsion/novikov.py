"""Truncated arithmetic in the Novikov completion of Z[Z^n] and invertibility tests.

A series is stored as a Laurent polynomial holding every term of phi-level
below ``horizon``; terms at or above the horizon are unknown.  Direction +1 is
the completion whose supports are bounded below in phi, direction -1 the
opposite one (equivalently, the completion for -phi).  An element is monic
exactly when it is invertible in both.

Verdicts never depend on the horizon: they come from the leading-level test,
which is exact.  The horizon only bounds how much of an inverse is written out.
"""

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .laurent import (LaurentElement, ZeroPolynomial, adjugate, determinant, format_laurent,
                      exact_number, identity_matrix, level, matmul)

DEFAULT_HORIZON = 32


def default_horizon():
    env = os.environ.get("NOVIKOV_HORIZON")
    return Fraction(env) if env else Fraction(DEFAULT_HORIZON)


class NotInvertible(ArithmeticError):
    def __init__(self, reason="leading_slice_singular"):
        super().__init__(reason)
        self.reason = reason


class Degenerate(ArithmeticError):
    """Leading slice is nonzero but annihilated by a nonzero matrix; test inconclusive."""


class ZeroMatrix(ValueError):
    pass


class BadShape(ValueError):
    pass


def oriented(phi, direction):
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    return tuple(exact_number(c) * direction for c in phi)


class NovikovSeries:
    """Truncated element of Z_phi[Z^n]].

    ``level_min`` is a lower bound for the phi-level of the support and
    ``horizon`` the level from which on terms are not known (``math.inf`` for
    an exact Laurent polynomial).
    """

    __slots__ = ("terms", "phi", "level_min", "horizon")

    def __init__(self, terms, phi, level_min=None, horizon=math.inf):
        phi = tuple(exact_number(c) for c in phi)
        if horizon != math.inf:
            horizon = Fraction(horizon)
            terms = terms.truncate_levels(phi, hi=horizon, hi_strict=True)
        if level_min is None:
            level_min = terms.min_level(phi) if not terms.is_zero() else horizon
        elif not terms.is_zero() and terms.min_level(phi) < level_min:
            raise ValueError("support below declared level_min")
        self.terms = terms
        self.phi = phi
        self.level_min = level_min
        self.horizon = horizon

    @classmethod
    def exact(cls, p, phi):
        return cls(p, phi)

    def _lift(self, other):
        if isinstance(other, NovikovSeries):
            return other
        if isinstance(other, int):
            other = LaurentElement.const(other, self.terms.nvars, self.terms.names)
        return NovikovSeries(other, self.phi)

    def __add__(self, other):
        other = self._lift(other)
        h = min(self.horizon, other.horizon)
        return NovikovSeries(self.terms + other.terms, self.phi,
                             min(self.level_min, other.level_min), h)

    __radd__ = __add__

    def __neg__(self):
        return NovikovSeries(-self.terms, self.phi, self.level_min, self.horizon)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        other = self._lift(other)
        if self.terms.is_zero() and self.horizon == math.inf:
            return NovikovSeries(self.terms, self.phi)
        if other.terms.is_zero() and other.horizon == math.inf:
            return NovikovSeries(other.terms, self.phi)
        h = min(self.horizon + other.level_min, other.horizon + self.level_min)
        return NovikovSeries(self.terms * other.terms, self.phi,
                             self.level_min + other.level_min, h)

    __rmul__ = __mul__

    def is_zero(self):
        """Zero up to the horizon."""
        return self.terms.is_zero()

    def agrees_with(self, other, horizon=None):
        other = self._lift(other)
        h = min(self.horizon, other.horizon)
        if horizon is not None:
            h = min(h, horizon)
        a = self.terms.truncate_levels(self.phi, hi=h, hi_strict=True)
        b = other.terms.truncate_levels(self.phi, hi=h, hi_strict=True)
        return a == b

    def __eq__(self, other):
        if not isinstance(other, (NovikovSeries, LaurentElement, int)):
            return NotImplemented
        return self.agrees_with(other)

    __hash__ = None

    def __str__(self):
        body = format_laurent(self.terms, self.phi) if not self.terms.is_zero() else "0"
        if self.horizon == math.inf:
            return body
        return f"{body} + O(level ≥ {self.horizon})"

    __repr__ = __str__


# ---------------------------------------------------------------- decomposition

@dataclass
class LevelDecomposition:
    """A = leading * g + tail with leading over Z[Gamma_phi] and tail above ``level``."""

    level: Fraction
    shift: tuple
    leading: list
    tail: list

    def reassemble(self):
        return [[a.shift(self.shift) + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.leading, self.tail)]


def _entries(A):
    scalar = isinstance(A, (LaurentElement, NovikovSeries))
    M = [[A]] if scalar else A
    M = [[x.terms if isinstance(x, NovikovSeries) else x for x in row] for row in M]
    return M, scalar


def decompose(A, phi):
    """Split off the minimal phi-level of a nonzero matrix (or single element)."""
    M, scalar = _entries(A)
    phi = tuple(exact_number(c) for c in phi)
    nonzero = [x for row in M for x in row if not x.is_zero()]
    if not nonzero:
        raise ZeroMatrix("decomposition of the zero matrix")
    C = min(x.min_level(phi) for x in nonzero)
    g = min(e for x in nonzero for e in x.terms if level(e, phi) == C)
    neg = tuple(-c for c in g)
    leading = [[x.truncate_levels(phi, C, C).shift(neg) for x in row] for row in M]
    tail = [[x - x.truncate_levels(phi, C, C) for x in row] for row in M]
    if scalar:
        return LevelDecomposition(C, g, leading[0][0], tail[0][0])
    return LevelDecomposition(C, g, leading, tail)


# ---------------------------------------------------------------- invertibility

def laurent_invertible(p, phi=None, direction=1):
    """Is p invertible in the Novikov completion in the given direction?

    True iff the extreme phi-slice on the bounded side is +-(monomial).
    """
    if p.is_zero():
        raise ZeroPolynomial("zero is never invertible")
    if phi is None:
        if p.nvars != 1:
            raise ValueError("phi is required for multivariable elements")
        phi = (1,)
    return p.lowest_slice(oriented(phi, direction)).is_unit()


def matrix_invertible(B, phi, direction=1):
    """Exact invertibility of a square Laurent matrix over the commutative completion.

    A matrix over a commutative ring is invertible iff its determinant is.
    """
    if not B:
        return True
    d = determinant(B)
    if d.is_zero():
        return False
    return laurent_invertible(d, phi, direction)


def invert_matrix(A, phi, horizon=None, direction=1):
    """Inverse over the Novikov completion via the leading-level geometric series.

    Returns a matrix of NovikovSeries ``B`` with ``A B`` and ``B A`` equal to the
    identity below level ``horizon`` (taken in the oriented grading).
    Raises NotInvertible when the leading slice is not invertible over
    Z[Gamma_phi] and Degenerate when it is a zero divisor, in which case the
    leading-level test says nothing.
    """
    M, scalar = _entries(A)
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("invert_matrix needs a square matrix")
    H = Fraction(horizon) if horizon is not None else default_horizon()
    ophi = oriented(phi, direction)
    dec = decompose(M, ophi)
    nv = M[0][0].nvars
    names = M[0][0].names
    d = determinant(dec.leading)
    if d.is_zero():
        raise Degenerate("leading slice has a nonzero annihilator")
    if not d.is_unit():
        raise NotInvertible("leading_slice_singular")
    dinv = d ** -1
    lead_inv = [[x * dinv for x in row] for row in adjugate(dec.leading)]
    neg_g = tuple(-c for c in dec.shift)
    # A = (lead * g)(id + P) with P of strictly positive level
    P = [[x.shift(neg_g) for x in row] for row in matmul(lead_inv, dec.tail)]
    minusP = [[-x for x in row] for row in P]
    S = identity_matrix(n, nv, names)
    term = identity_matrix(n, nv, names)
    while True:
        term = [[x.truncate_levels(ophi, hi=H, hi_strict=True) for x in row]
                for row in matmul(term, minusP)]
        if all(x.is_zero() for row in term for x in row):
            break
        S = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(S, term)]
    B = [[x.shift(neg_g) for x in row] for row in matmul(S, lead_inv)]
    low = -dec.level
    out = [[NovikovSeries(x, ophi, low, low + H) for x in row] for row in B]
    return out[0][0] if scalar else out


def invert_element(p, phi=None, horizon=None, direction=1):
    if phi is None:
        phi = (1,)
    if p.is_zero():
        raise ZeroPolynomial("zero is never invertible")
    return invert_matrix(p, phi, horizon, direction)


def series_matmul(A, B):
    n, m, inner = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for k in range(1, inner):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def is_identity_to_horizon(M):
    for i, row in enumerate(M):
        for j, x in enumerate(row):
            want = LaurentElement.const(int(i == j), x.terms.nvars)
            if not x.agrees_with(NovikovSeries(want, x.phi)):
                return False
    return True


# ---------------------------------------------------------------- chain complexes

@dataclass
class BasedComplex:
    """Based complex of free modules over Z[Z^n].

    Closed shape: 0 -> R -C-> R^n -B-> R^n -A-> R -> 0 (``C`` a column given as a list).
    Boundary shape: 0 -> R^(n-1) -B-> R^n -A-> R -> 0 (``C`` is None).
    Matrices act on column vectors, so A B = 0 and B C = 0.
    """

    A: list
    B: list
    C: list = None

    @property
    def n(self):
        return len(self.A)

    @property
    def closed(self):
        return self.C is not None

    def check(self):
        n = self.n
        if n == 0:
            raise BadShape("empty complex")
        if len(self.B) != n:
            raise BadShape("B must have n rows")
        width = n if self.closed else n - 1
        if any(len(r) != width for r in self.B):
            raise BadShape(f"B must have {width} columns")
        if self.closed and len(self.C) != n:
            raise BadShape("C must have n entries")
        AB = matmul([self.A], self.B) if width else [[]]
        if any(not x.is_zero() for x in AB[0]):
            raise BadShape("A * B != 0")
        if self.closed:
            BC = matmul(self.B, [[c] for c in self.C])
            if any(not r[0].is_zero() for r in BC):
                raise BadShape("B * C != 0")
        return self

    def reduced_block(self):
        """B' : the block of B away from the corner row and column."""
        if self.closed:
            return [row[1:] for row in self.B[1:]]
        return [list(row) for row in self.B[1:]]


def transform_complex(cx, phi, direction=1, horizon=None):
    """Row/column operations clearing the corners, with series for a_1^-1 and c_1^-1.

    Returns (A Q, Q^-1 B P, P^-1 C) as matrices of NovikovSeries.
    """
    ophi = oriented(phi, direction)
    H = Fraction(horizon) if horizon is not None else default_horizon()
    n = cx.n

    def ser(x):
        return NovikovSeries(x, ophi)

    zero = LaurentElement({}, cx.A[0].nvars, cx.A[0].names)
    one = zero.one()
    a_inv = invert_matrix(cx.A[0], phi, H, direction)
    Q = [[ser(one if i == j else zero) for j in range(n)] for i in range(n)]
    Qinv = [[ser(one if i == j else zero) for j in range(n)] for i in range(n)]
    for j in range(1, n):
        Q[0][j] = -(a_inv * ser(cx.A[j]))
        Qinv[0][j] = a_inv * ser(cx.A[j])
    AQ = series_matmul([[ser(a) for a in cx.A]], Q)[0]
    Bs = [[ser(x) for x in row] for row in cx.B]
    if cx.closed:
        c_inv = invert_matrix(cx.C[0], phi, H, direction)
        P = [[ser(one if i == j else zero) for j in range(n)] for i in range(n)]
        Pinv = [[ser(one if i == j else zero) for j in range(n)] for i in range(n)]
        for i in range(1, n):
            P[i][0] = ser(cx.C[i]) * c_inv
            Pinv[i][0] = -(ser(cx.C[i]) * c_inv)
        PC = [r[0] for r in series_matmul(Pinv, [[ser(c)] for c in cx.C])]
        QBP = series_matmul(series_matmul(Qinv, Bs), P)
    else:
        PC = None
        QBP = series_matmul(Qinv, Bs) if cx.B and cx.B[0] else [[] for _ in range(n)]
    return AQ, QBP, PC


def acyclicity_test(cx, phi=None, direction=1, ring="novikov", horizon=None):
    """Decide acyclicity of a based complex through its reduced block B'.

    ``ring`` is ``"novikov"`` (the completion in ``direction``) or
    ``"fraction_field"`` (Q(Z^n)).  The corner entries must be units of the ring.
    """
    cx.check()
    nv = cx.A[0].nvars
    if phi is None:
        if nv != 1:
            raise ValueError("phi is required for multivariable complexes")
        phi = (1,)
    corners = [cx.A[0]] + ([cx.C[0]] if cx.closed else [])
    Bp = cx.reduced_block()
    if ring == "fraction_field":
        if any(c.is_zero() for c in corners):
            raise BadShape("corner entry is zero")
        return (not Bp) or not determinant(Bp).is_zero()
    if ring != "novikov":
        raise ValueError(f"unknown ring {ring!r}")
    for c in corners:
        if c.is_zero() or not laurent_invertible(c, phi, direction):
            raise BadShape("corner entry is not a unit in the completion")
    AQ, QBP, PC = transform_complex(cx, phi, direction, horizon)
    if any(not x.is_zero() for x in AQ[1:]):
        raise AssertionError("A Q failed to clear the first row")
    if PC is not None and any(not x.is_zero() for x in PC[1:]):
        raise AssertionError("P^-1 C failed to clear the first column")
    lower = [row[1:] for row in QBP[1:]] if cx.closed else QBP[1:]
    for row_s, row_b in zip(lower, Bp):
        for s, b in zip(row_s, row_b):
            if not s.agrees_with(b):
                raise AssertionError("transformed block differs from B'")
    return matrix_invertible(Bp, phi, direction)
