"""Group rings of torsion-free class-2 polycyclic groups (Heisenberg group built in).

Elements of the group are normal-form exponent tuples g_1^a_1 ... g_r^a_r.
The presentation is given by rules g_j g_i = g_i g_j c_ij (i < j) where every
c_ij is a word in central generators; with that restriction collection has a
closed form and is trivially confluent, which the constructor double-checks.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .intlinalg import integer_kernel, lattice_coordinates
from .laurent import NEG_INF, LaurentElement, determinant


class UnsupportedKernel(NotImplementedError):
    pass


class PcGroup:
    def __init__(self, names, rules=None):
        """``rules[(i, j)]`` (i < j) is the normal form of g_j g_i as an exponent tuple."""
        self.names = tuple(names)
        r = self.rank = len(self.names)
        self.comm = {}
        for (i, j), nf in (rules or {}).items():
            if not 0 <= i < j < r:
                raise ValueError(f"bad rule index ({i}, {j})")
            c = list(nf)
            if len(c) != r:
                raise ValueError("rule has wrong length")
            c[i] -= 1
            c[j] -= 1
            if c[i] or c[j]:
                raise ValueError(f"rule for g{j} g{i} must be g{i} g{j} times a commutator word")
            if any(c):
                self.comm[(i, j)] = tuple(c)
        involved = {k for (i, j) in self.comm for k in (i, j)}
        self.central = tuple(k for k in range(r) if k not in involved)
        for (i, j), c in self.comm.items():
            for k, e in enumerate(c):
                if e and (k not in self.central or k <= j):
                    raise ValueError("commutator words must lie in later central generators")
        self._check_triples()

    def _check_triples(self):
        gens = [self.gen(i, s) for i in range(self.rank) for s in (1, -1)]
        for a, b, c in product(gens, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise ValueError("rules are not confluent")

    def identity(self):
        return (0,) * self.rank

    def gen(self, i, e=1):
        v = [0] * self.rank
        v[i] = e
        return tuple(v)

    def _mul_syllable(self, a, i, n):
        a = list(a)
        for j in range(i + 1, self.rank):
            c = self.comm.get((i, j))
            if c and a[j]:
                f = a[j] * n
                for k, e in enumerate(c):
                    a[k] += e * f
        a[i] += n
        return a

    def mul(self, a, b):
        out = list(a)
        for i, n in enumerate(b):
            if n:
                out = self._mul_syllable(out, i, n)
        return tuple(out)

    def inverse(self, a):
        out = self.identity()
        for i in reversed(range(self.rank)):
            if a[i]:
                out = tuple(self._mul_syllable(out, i, -a[i]))
        return out

    def collect(self, word):
        """Normal form of a word given as (generator, exponent) pairs."""
        out = list(self.identity())
        for i, n in word:
            if n:
                out = self._mul_syllable(out, i, n)
        return tuple(out)

    def format(self, a):
        parts = []
        for name, e in zip(self.names, a):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def __eq__(self, other):
        return isinstance(other, PcGroup) and (self.names, self.comm) == (other.names, other.comm)

    def __hash__(self):
        return hash(self.names)


def heisenberg():
    """Integral Heisenberg group: z central, y x = x y z^-1, so z = x^-1 y^-1 x y."""
    return PcGroup(("x", "y", "z"), {(0, 1): (1, 1, -1)})


class PcElement:
    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = {tuple(g): int(c) for g, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, group, g, c=1):
        return cls(group, {tuple(g): c})

    @classmethod
    def const(cls, group, c):
        return cls(group, {group.identity(): c})

    def is_zero(self):
        return not self.terms

    def _coerce(self, other):
        if isinstance(other, int):
            return PcElement.const(self.group, other)
        if other.group != self.group:
            raise ValueError("elements of different groups")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return PcElement(self.group, out)

    __radd__ = __add__

    def __neg__(self):
        return PcElement(self.group, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        mul = self.group.mul
        for g, c in self.terms.items():
            for h, d in other.terms.items():
                k = mul(g, h)
                out[k] = out.get(k, 0) + c * d
        return PcElement(self.group, out)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def right_shift(self, g):
        mul = self.group.mul
        return PcElement(self.group, {mul(h, g): c for h, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = PcElement.const(self.group, other)
        return isinstance(other, PcElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for g, c in sorted(self.terms.items()):
            mono = self.group.format(g)
            if mono == "1":
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else ("-" + mono if c == -1 else f"{c}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__

    def to_json(self):
        return [[list(g), c] for g, c in sorted(self.terms.items())]


@dataclass(frozen=True)
class PcGrading:
    """A homomorphism phi: Gamma -> Q given by its values on the pc generators."""

    group: PcGroup
    phi: tuple

    def __post_init__(self):
        phi = tuple(Fraction(v) for v in self.phi)
        object.__setattr__(self, "phi", phi)
        if len(phi) != self.group.rank:
            raise ValueError("grading has wrong length")
        for c in self.group.comm.values():
            if sum(p * e for p, e in zip(phi, c)):
                raise ValueError("phi must vanish on commutators")

    def __call__(self, g):
        return sum((p * e for p, e in zip(self.phi, g)), Fraction(0))


def pc_deg_phi(p, grading):
    if p.is_zero():
        return NEG_INF
    lv = [grading(g) for g in p.terms]
    return max(lv) - min(lv)


class PcVerdict(enum.Enum):
    INVERTIBLE = "Invertible"
    NOT_INVERTIBLE = "NotInvertible"
    DEGENERATE = "Degenerate"


class KernelChart:
    """Coordinates Gamma_phi -> Z^m when the kernel of phi is abelian."""

    def __init__(self, grading):
        G = grading.group
        self.group = G
        comm_gens = sorted({k for c in G.comm.values() for k, e in enumerate(c) if e})
        free_idx = [k for k in range(G.rank) if k not in comm_gens]
        row = [[int(grading.phi[k] * _den(grading.phi)) for k in free_idx]]
        ker = integer_kernel(row, len(free_idx)) if free_idx else []
        basis = []
        for v in ker:
            full = [0] * G.rank
            for k, x in zip(free_idx, v):
                full[k] = x
            basis.append(tuple(full))
        self.free_idx = free_idx
        self.comm_gens = comm_gens
        self.noncentral = basis
        self.nvars = len(basis) + len(comm_gens)
        for a in basis:
            for b in basis:
                if G.mul(a, b) != G.mul(b, a):
                    raise UnsupportedKernel("kernel of phi is not abelian")

    def coords(self, g):
        G = self.group
        sub = [g[k] for k in self.free_idx]
        basis_sub = [[b[k] for k in self.free_idx] for b in self.noncentral]
        n = lattice_coordinates(basis_sub, sub) if basis_sub else []
        h = G.identity()
        for b, k in zip(self.noncentral, n):
            for _ in range(abs(k)):
                h = G.mul(h, b if k > 0 else G.inverse(b))
        r = G.mul(G.inverse(h), g)
        if any(r[k] for k in self.free_idx):
            raise ValueError("element not in the kernel of phi")
        return tuple(n) + tuple(r[k] for k in self.comm_gens)

    def to_laurent(self, p):
        # a trivial kernel still gets one (unused) variable so determinants have a ring
        pad = (0,) if self.nvars == 0 else ()
        return LaurentElement({self.coords(g) + pad: c for g, c in p.terms.items()},
                              max(self.nvars, 1))


def _den(phi):
    return math.lcm(*(v.denominator for v in phi)) if phi else 1


def pc_decompose(A, grading):
    """A = A' g + A'' with A' over Z[Gamma_phi] at the minimal phi-level."""
    entries = [x for row in A for x in row if not x.is_zero()]
    if not entries:
        raise ValueError("zero matrix")
    C = min(grading(g) for x in entries for g in x.terms)
    g = min(h for x in entries for h in x.terms if grading(h) == C)
    ginv = A[0][0].group.inverse(g)
    lead = []
    tail = []
    for row in A:
        lr, tr = [], []
        for x in row:
            low = PcElement(x.group, {h: c for h, c in x.terms.items() if grading(h) == C})
            lr.append(low.right_shift(ginv))
            tr.append(x - low)
        lead.append(lr)
        tail.append(tr)
    return C, g, lead, tail


def pc_invertibility(A, grading):
    """Leading-level invertibility test over the Novikov completion of Z[Gamma].

    The leading slice lives in Z[Gamma_phi]; when that group is abelian the slice
    is a Laurent matrix and it is invertible there iff its determinant is
    +-monomial.  A zero determinant means the slice is a zero divisor and the
    test is inconclusive.
    """
    if isinstance(A, PcElement):
        A = [[A]]
    _, _, lead, _ = pc_decompose(A, grading)
    chart = KernelChart(grading)
    L = [[chart.to_laurent(x) for x in row] for row in lead]
    d = determinant(L, chart.nvars or 1)
    if d.is_zero():
        return PcVerdict.DEGENERATE
    return PcVerdict.INVERTIBLE if d.is_unit() else PcVerdict.NOT_INVERTIBLE
