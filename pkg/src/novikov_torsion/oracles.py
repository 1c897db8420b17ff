"""Slow reference computations used to cross-check the main routines.

Nothing here shares an algorithm with the fast paths: determinants are expanded
by cofactors, inverses are built coefficient by coefficient over Q, and
fraction-field ranks come from evaluating at rational points.
"""

from fractions import Fraction
from itertools import permutations

from .intlinalg import rational_rank
from .laurent import LaurentElement


def _perm_sign(p):
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def leibniz_det(M, nvars=1, names=None):
    n = len(M)
    if n == 0:
        return LaurentElement.const(1, nvars, names)
    nvars = M[0][0].nvars
    acc = LaurentElement({}, nvars, M[0][0].names)
    for p in permutations(range(n)):
        term = LaurentElement.const(_perm_sign(p), nvars, M[0][0].names)
        for i, j in enumerate(p):
            term = term * M[i][j]
            if term.is_zero():
                break
        acc = acc + term
    return acc


def cofactor_adjugate(M):
    n = len(M)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = [[M[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            d = leibniz_det(sub, M[0][0].nvars, M[0][0].names) if sub else \
                LaurentElement.const(1, M[0][0].nvars, M[0][0].names)
            out[i][j] = d if (i + j) % 2 == 0 else -d
    return out


def _coeffs(p, direction):
    if p.nvars != 1:
        raise ValueError("the series oracle handles one variable")
    return {e[0] * direction: c for e, c in p.terms.items()}


def reciprocal_series(p, direction=1, nterms=32):
    """1/p in the completion towards +direction, as (lowest exponent, Fraction coefficients)."""
    c = _coeffs(p, direction)
    if not c:
        raise ZeroDivisionError("zero has no reciprocal")
    L = min(c)
    lead = Fraction(c[L])
    d = []
    for k in range(nterms):
        s = Fraction(int(k == 0))
        for j in range(1, k + 1):
            s -= c.get(L + j, 0) * d[k - j]
        d.append(s / lead)
    return -L, d


def series_inverse(A, direction=1, horizon=32):
    """Entries of A^-1 as {exponent: Fraction} (oriented exponents), exact below their bound.

    Returns (entries, bound) where every coefficient at oriented exponent < bound
    is correct; ``None`` when det A = 0.
    """
    scalar = not isinstance(A, list)
    M = [[A]] if scalar else A
    det = leibniz_det(M)
    if det.is_zero():
        return None
    adj = cofactor_adjugate(M) if len(M) > 1 else [[LaurentElement.const(1, 1, det.names)]]
    low, d = reciprocal_series(det, direction, horizon)
    entries = []
    bound = None
    for row in adj:
        out_row = []
        for a in row:
            ac = _coeffs(a, direction)
            vals = {}
            if ac:
                lo = min(ac)
                top = low + lo + horizon
                bound = top if bound is None else min(bound, top)
                for e, x in ac.items():
                    for k, y in enumerate(d):
                        m = e + low + k
                        if m < top:
                            vals[m] = vals.get(m, 0) + x * y
            out_row.append({m: v for m, v in vals.items() if v})
        entries.append(out_row)
    if bound is None:
        bound = low + horizon
    return entries, bound


def oracle_invertible(A, direction=1, horizon=32):
    """Invertible over the integral completion iff every computed inverse coefficient is integral."""
    got = series_inverse(A, direction, horizon)
    if got is None:
        return False
    entries, _ = got
    return all(v.denominator == 1 for row in entries for e in row for v in e.values())


def _sample_points(nvars, count):
    base = [Fraction(2), Fraction(3), Fraction(5, 2), Fraction(-7, 3), Fraction(11),
            Fraction(13, 7), Fraction(-4), Fraction(17, 5), Fraction(19), Fraction(-23, 11),
            Fraction(29, 3), Fraction(31, 13)]
    pts = []
    for i in range(count):
        pts.append(tuple(base[(i + 3 * k) % len(base)] + k for k in range(nvars)))
    return pts


def generic_rank(M, nvars=1, samples=12):
    """Rank over the fraction field: the maximum rank over a set of rational evaluations."""
    if not M or not M[0]:
        return 0
    best = 0
    for pt in _sample_points(nvars, samples):
        vals = [[x.evaluate(pt) for x in row] for row in M]
        best = max(best, rational_rank(vals))
    return best


def fraction_field_acyclic(cx, samples=12):
    """Homology of a based complex over Q(Z^n), from ranks of the boundary maps."""
    nv = cx.A[0].nvars
    n = cx.n
    rA = generic_rank([list(cx.A)], nv, samples)
    rB = generic_rank(cx.B, nv, samples)
    if cx.closed:
        rC = generic_rank([[c] for c in cx.C], nv, samples)
        betti = [1 - rA, n - rA - rB, n - rB - rC, 1 - rC]
    else:
        width = len(cx.B[0]) if cx.B else 0
        betti = [1 - rA, n - rA - rB, width - rB]
    return all(b == 0 for b in betti), betti
