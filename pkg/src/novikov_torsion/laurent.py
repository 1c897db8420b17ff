"""Exact Laurent polynomials over Z in n variables, fractions and determinants.

Exponents and coefficients are Python ints, so nothing overflows.  Monomials
are ordered by their phi-level first and lexicographically on the exponent
vector second; this order picks "lowest" and "highest" terms everywhere.
"""

import math
import re
from fractions import Fraction

NEG_INF = -math.inf


class ZeroPolynomial(ValueError):
    pass


class ZeroValue(ValueError):
    pass


def _default_names(n):
    if n == 1:
        return ("t",)
    if n <= 3:
        return ("t", "u", "v")[:n]
    return tuple(f"x{i}" for i in range(1, n + 1))


def exact_number(c):
    """Fraction(c), narrowed to int when integral."""
    f = Fraction(c)
    return f.numerator if f.denominator == 1 else f


def level(e, phi):
    # stays an int for integral phi; Fraction entries promote the sum
    total = 0
    for c, x in zip(phi, e):
        total += c * x
    return total


class LaurentElement:
    __slots__ = ("nvars", "terms", "names", "_hash")

    def __init__(self, terms=None, nvars=1, names=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = tuple(int(x) for x in e)
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                    clean[e] = int(c)
        self.nvars = nvars
        self.terms = clean
        self.names = tuple(names) if names else _default_names(nvars)
        self._hash = None

    @classmethod
    def _trusted(cls, terms, nvars, names):
        # internal results: exponents are already int tuples of the right length
        obj = cls.__new__(cls)
        obj.terms = {e: c for e, c in terms.items() if c}
        obj.nvars = nvars
        obj.names = names
        obj._hash = None
        return obj

    # -- constructors
    @classmethod
    def const(cls, c, nvars=1, names=None):
        return cls({(0,) * nvars: c}, nvars, names)

    @classmethod
    def monomial(cls, e, c=1, names=None):
        e = tuple(e)
        return cls({e: c}, len(e), names)

    @classmethod
    def var(cls, i, nvars, power=1, names=None):
        e = [0] * nvars
        e[i] = power
        return cls({tuple(e): 1}, nvars, names)

    @classmethod
    def from_coeffs(cls, coeffs, low=0, names=None):
        """Univariate element sum coeffs[i] * t^(low + i)."""
        return cls({(low + i,): c for i, c in enumerate(coeffs)}, 1, names)

    def zero(self):
        return LaurentElement({}, self.nvars, self.names)

    def one(self):
        return LaurentElement.const(1, self.nvars, self.names)

    # -- predicates
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self):
        return len(self.terms) == 1

    def is_unit(self):
        """True iff the element is +-(monomial), the units of Z[Z^n]."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, LaurentElement):
            if other.nvars != self.nvars:
                raise ValueError("mismatched number of variables")
            return other
        if isinstance(other, int):
            return LaurentElement.const(other, self.nvars, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentElement._trusted(out, self.nvars, self.names)

    __radd__ = __add__

    def __neg__(self):
        return LaurentElement._trusted({e: -c for e, c in self.terms.items()}, self.nvars, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentElement._trusted(out, self.nvars, self.names)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            (e, c), = self.terms.items()
            return LaurentElement({tuple(-x * -k for x in e): c ** (-k)}, self.nvars, self.names)
        out = self.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, g):
        """Multiply by the monomial with exponent vector g."""
        return LaurentElement({tuple(a + b for a, b in zip(e, g)): c for e, c in self.terms.items()},
                              self.nvars, self.names)

    def scale(self, k):
        return LaurentElement({e: c * k for e, c in self.terms.items()}, self.nvars, self.names)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentElement.const(other, self.nvars)
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- structure
    def content(self):
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
        return g

    def support(self):
        return list(self.terms)

    def sorted_terms(self, phi=None):
        phi = phi or (1,) * self.nvars
        return sorted(self.terms.items(), key=lambda ec: (level(ec[0], phi), ec[0]))

    def levels(self, phi):
        """Mapping phi-level -> slice of the element at that level."""
        out = {}
        for e, c in self.terms.items():
            out.setdefault(level(e, phi), {})[e] = c
        return {lv: LaurentElement(t, self.nvars, self.names) for lv, t in out.items()}

    def min_level(self, phi):
        if not self.terms:
            return math.inf
        return min(level(e, phi) for e in self.terms)

    def max_level(self, phi):
        if not self.terms:
            return NEG_INF
        return max(level(e, phi) for e in self.terms)

    def lowest_slice(self, phi):
        if not self.terms:
            raise ZeroPolynomial("zero has no slices")
        lv = self.min_level(phi)
        return self.truncate_levels(phi, lv, lv)

    def highest_slice(self, phi):
        if not self.terms:
            raise ZeroPolynomial("zero has no slices")
        lv = self.max_level(phi)
        return self.truncate_levels(phi, lv, lv)

    def truncate_levels(self, phi, lo=NEG_INF, hi=math.inf, hi_strict=False):
        out = {}
        for e, c in self.terms.items():
            lv = level(e, phi)
            if lv < lo or lv > hi or (hi_strict and lv == hi):
                continue
            out[e] = c
        return LaurentElement._trusted(out, self.nvars, self.names)

    def lowest_term(self, phi=None):
        if not self.terms:
            raise ZeroPolynomial("zero has no lowest term")
        return self.sorted_terms(phi)[0]

    def map_exponents(self, matrix, nvars_out, names=None):
        """Push forward along the linear map Z^n -> Z^m given by rows of ``matrix``."""
        out = {}
        for e, c in self.terms.items():
            f = tuple(sum(row[i] * e[i] for i in range(self.nvars)) for row in matrix)
            out[f] = out.get(f, 0) + c
        return LaurentElement(out, nvars_out, names)

    def evaluate(self, point):
        total = Fraction(0)
        for e, c in self.terms.items():
            m = Fraction(c)
            for x, k in zip(point, e):
                m *= Fraction(x) ** k
            total += m
        return total

    def with_names(self, names):
        return LaurentElement(self.terms, self.nvars, names)

    # -- division
    def divexact(self, other):
        """Exact quotient self / other; raises ValueError if other does not divide."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if self.is_zero():
            return self.zero()
        if other.is_monomial():
            (e, c), = other.terms.items()
            out = {}
            for f, d in self.terms.items():
                if d % c:
                    raise ValueError("not exactly divisible")
                out[tuple(a - b for a, b in zip(f, e))] = d // c
            return LaurentElement(out, self.nvars, self.names)
        lead_e = max(other.terms)
        lead_c = other.terms[lead_e]
        floor = tuple(a - b for a, b in zip(min(self.terms), min(other.terms)))
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, lead_e))
            if qe < floor or c % lead_c:
                raise ValueError("not exactly divisible")
            qc = c // lead_c
            quot[qe] = qc
            for f, d in other.terms.items():
                g = tuple(a + b for a, b in zip(f, qe))
                v = rem.get(g, 0) - qc * d
                if v:
                    rem[g] = v
                else:
                    rem.pop(g, None)
        return LaurentElement(quot, self.nvars, self.names)

    # -- printing
    def __repr__(self):
        return f"LaurentElement({self})"

    def __str__(self):
        return format_laurent(self)

    def to_json(self):
        return [[list(e), c] for e, c in self.sorted_terms()]


def format_laurent(p, phi=None):
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms(phi):
        mono = []
        for name, k in zip(p.names, e):
            if k == 1:
                mono.append(name)
            elif k:
                mono.append(f"{name}^{k}")
        body = "*".join(mono)
        mag = abs(c)
        if body:
            s = body if mag == 1 else f"{mag}*{body}"
        else:
            s = str(mag)
        if not parts:
            parts.append(s if c > 0 else "-" + s)
        else:
            parts.append(("+ " if c > 0 else "- ") + s)
    return " ".join(parts)


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*((?:[A-Za-z]\w*(?:\^-?\d+)?\s*\*?\s*)*)")


def parse_laurent(text, names=("t",)):
    """Parse strings like ``2*t^-1 - 3 + 2*t`` or ``1 - u*v^-1``."""
    names = tuple(names)
    index = {n: i for i, n in enumerate(names)}
    n = len(names)
    terms = {}
    s = text.replace(" ", "")
    if s in ("", "0"):
        return LaurentElement({}, n, names)
    pos = 0
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ValueError(f"expected + or - at position {pos + 1} in {text!r}")
        first = False
        m = re.match(r"(\d+)?(\*)?", s[pos:])
        coeff = int(m.group(1)) if m.group(1) else 1
        pos += m.end()
        e = [0] * n
        had_var = False
        while True:
            vm = re.match(r"([A-Za-z]\w*)(\^\(?(-?\d+)\)?)?\*?", s[pos:])
            if not vm:
                break
            name = vm.group(1)
            if name not in index:
                raise ValueError(f"unknown variable {name!r} in {text!r}")
            e[index[name]] += int(vm.group(3)) if vm.group(2) else 1
            pos += vm.end()
            had_var = True
        if not had_var and not m.group(1):
            raise ValueError(f"cannot parse {text!r} at position {pos + 1}")
        key = tuple(e)
        terms[key] = terms.get(key, 0) + sign * coeff
    return LaurentElement(terms, n, names)


# ---------------------------------------------------------------- degree and monicness

def default_phi(p, phi):
    if phi is not None:
        return tuple(phi)
    if p.nvars == 1:
        return (1,)
    raise ValueError("a grading phi is required for multivariable elements")


def deg_phi(p, phi=None):
    """max phi(g) - min phi(h) over the support; -inf for zero."""
    if p.is_zero():
        return NEG_INF
    phi = default_phi(p, phi)
    return p.max_level(phi) - p.min_level(phi)


def is_monic(p, phi=None):
    """Both extreme phi-slices are units (+-monomials)."""
    if p.is_zero():
        raise ZeroPolynomial("monicness of zero is undefined")
    phi = default_phi(p, phi)
    return p.lowest_slice(phi).is_unit() and p.highest_slice(phi).is_unit()


def is_top_monic(p, phi=None):
    if p.is_zero():
        raise ZeroPolynomial("monicness of zero is undefined")
    phi = default_phi(p, phi)
    return p.highest_slice(phi).is_unit()


def is_bottom_monic(p, phi=None):
    if p.is_zero():
        raise ZeroPolynomial("monicness of zero is undefined")
    phi = default_phi(p, phi)
    return p.lowest_slice(phi).is_unit()


# ---------------------------------------------------------------- matrices

def matrix_nvars(M, default=1):
    for row in M:
        for x in row:
            return x.nvars
    return default


def determinant(M, nvars=None):
    """Fraction-free (Bareiss) determinant of a square matrix of LaurentElements."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant needs a square matrix")
    nv = nvars or matrix_nvars(M)
    if n == 0:
        return LaurentElement.const(1, nv)
    names = M[0][0].names
    A = [list(row) for row in M]
    sign = 1
    prev = LaurentElement.const(1, nv, names)
    for k in range(n - 1):
        if A[k][k].is_zero():
            p = next((i for i in range(k + 1, n) if not A[i][k].is_zero()), None)
            if p is None:
                return LaurentElement({}, nv, names)
            A[k], A[p] = A[p], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]).divexact(prev)
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def matmul(A, B):
    n, m = len(A), len(B[0]) if B else 0
    inner = len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for k in range(inner):
                t = A[i][k] * B[k][j]
                acc = t if acc is None else acc + t
            row.append(acc)
        out.append(row)
    return out


def identity_matrix(n, nvars=1, names=None):
    return [[LaurentElement.const(int(i == j), nvars, names) for j in range(n)] for i in range(n)]


def minor(M, drop_row=None, drop_col=None):
    return [[x for j, x in enumerate(row) if j != drop_col]
            for i, row in enumerate(M) if i != drop_row]


def adjugate(M):
    n = len(M)
    if n == 1:
        return [[M[0][0].one()]]
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            d = determinant(minor(M, j, i))
            out[i][j] = d if (i + j) % 2 == 0 else -d
    return out


# ---------------------------------------------------------------- univariate gcd

def _to_poly(p):
    """(low exponent, coefficient list) for a nonzero univariate element."""
    exps = [e[0] for e in p.terms]
    lo, hi = min(exps), max(exps)
    coeffs = [0] * (hi - lo + 1)
    for e, c in p.terms.items():
        coeffs[e[0] - lo] = c
    return lo, coeffs


def _poly_rem(a, b):
    a = list(a)
    while len(a) >= len(b) and any(a):
        f = a[-1] / b[-1]
        off = len(a) - len(b)
        for i, c in enumerate(b):
            a[off + i] -= f * c
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _primitive_int(coeffs):
    den = 1
    for c in coeffs:
        den = math.lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def gcd_univariate(p, q):
    """Primitive gcd in Z[t^{+-1}], normalized to lowest exponent 0 and positive top."""
    if p.nvars != 1 or q.nvars != 1:
        raise ValueError("gcd is implemented for one variable only")
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    _, a = _to_poly(p)
    _, b = _to_poly(q)
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while b:
        a, b = b, _poly_rem(a, b)
    g = _primitive_int(a)
    return LaurentElement.from_coeffs(g, 0, p.names)


# ---------------------------------------------------------------- fractions

class FractionElement:
    """numerator / denominator over Z[Z^n]; for n = 1 common factors are cancelled."""

    __slots__ = ("num", "den", "normalized")

    def __init__(self, num, den=None, normalize=True):
        if den is None:
            den = num.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den
        self.normalized = False
        if normalize:
            self._normalize()

    def _normalize(self):
        num, den = self.num, self.den
        if num.is_zero():
            self.num, self.den = num, den.one()
            self.normalized = True
            return
        if num.nvars == 1:
            g = gcd_univariate(num, den)
            if not g.is_unit():
                num, den = num.divexact(g), den.divexact(g)
            # content of numerator/denominator
            cn, cd = num.content(), den.content()
            c = math.gcd(cn, cd)
            if c > 1:
                cc = LaurentElement.const(c, 1, num.names)
                num, den = num.divexact(cc), den.divexact(cc)
        e, c = den.lowest_term()
        shift = tuple(-x for x in e)
        s = 1 if c > 0 else -1
        self.num = num.shift(shift).scale(s)
        self.den = den.shift(shift).scale(s)
        self.normalized = True

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self):
        return self.num.is_zero()

    def __mul__(self, other):
        if isinstance(other, LaurentElement):
            other = FractionElement(other)
        return FractionElement(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        if isinstance(other, LaurentElement):
            other = FractionElement(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return FractionElement(self.num * other.den, self.den * other.num)

    def __add__(self, other):
        if isinstance(other, LaurentElement):
            other = FractionElement(other)
        return FractionElement(self.num * other.den + other.num * self.den, self.den * other.den)

    def __eq__(self, other):
        if isinstance(other, LaurentElement):
            other = FractionElement(other)
        if not isinstance(other, FractionElement):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash(("frac", self.nvars))

    def __str__(self):
        if self.den == self.den.one():
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    __repr__ = __str__

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json(),
                "num_str": str(self.num), "den_str": str(self.den)}


def deg_phi_fraction(f, phi=None):
    if f.den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if f.num.is_zero():
        return NEG_INF
    return deg_phi(f.num, phi) - deg_phi(f.den, phi)


def monic_fraction(f, phi=None):
    """True iff f is a quotient of two monic Laurent polynomials.

    For one variable the fraction is reduced first.  For several variables the
    slice test is exact only when the denominator is already monic, since
    common factors cannot be cancelled without a multivariable gcd.
    """
    if f.is_zero():
        raise ZeroValue("monicness of zero is undefined")
    if f.nvars == 1:
        g = FractionElement(f.num, f.den) if not f.normalized else f
        return is_monic(g.num, phi) and is_monic(g.den, phi)
    if not is_monic(f.den, phi):
        raise ValueError("multivariable fraction with non-monic denominator: reduce it first")
    return is_monic(f.num, phi)


class TorsionValue:
    """Element of the fraction field (or zero), defined up to +-monomials."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        if value is not None and value.is_zero():
            value = None
        self.value = value

    @classmethod
    def zero(cls):
        return cls(None)

    def is_zero(self):
        return self.value is None

    def normalized(self):
        """Representative with both numerator and denominator lowest terms at exponent 0,
        the numerator's lowest coefficient positive."""
        if self.value is None:
            return None
        f = self.value
        e, c = f.num.lowest_term()
        num = f.num.shift(tuple(-x for x in e)).scale(1 if c > 0 else -1)
        e2, c2 = f.den.lowest_term()
        den = f.den.shift(tuple(-x for x in e2)).scale(1 if c2 > 0 else -1)
        return FractionElement(num, den, normalize=False)

    def equivalent(self, other):
        if self.value is None or other.value is None:
            return self.value is None and other.value is None
        a = self.value.num * other.value.den
        b = other.value.num * self.value.den
        return units_equivalent(a, b)

    def __eq__(self, other):
        if not isinstance(other, TorsionValue):
            return NotImplemented
        return self.equivalent(other)

    def __hash__(self):
        return hash("torsion")

    def __str__(self):
        if self.value is None:
            return "0"
        return str(self.normalized())


def units_equivalent(a, b):
    """a == +-monomial * b."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    if len(a.terms) != len(b.terms):
        return False
    ea, ca = min(a.terms.items())
    eb, cb = min(b.terms.items())
    if abs(ca) != abs(cb):
        return False
    s = 1 if ca == cb else -1
    g = tuple(x - y for x, y in zip(ea, eb))
    return a == b.shift(g).scale(s)
