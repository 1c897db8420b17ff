"""Finitely presented groups, free differential calculus and braid closures."""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .intlinalg import integer_kernel, smith_normal_form, diagonal


class ParseError(ValueError):
    def __init__(self, msg, line=1, col=1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


class NotAKnot(ValueError):
    pass


class NoFreeQuotient(ValueError):
    pass


class Word:
    """Freely reduced word in a free group, stored as (generator, power) syllables.

    Adjacent syllables always have different generators and nonzero powers.
    """

    __slots__ = ("syllables", "_hash")

    def __init__(self, letters=()):
        # letters: iterable of (gen, exp) with arbitrary nonzero exp; reduced on entry
        out = []
        for g, e in letters:
            if e == 0:
                continue
            if out and out[-1][0] == g:
                s = out[-1][1] + e
                out.pop()
                if s:
                    out.append((g, s))
            else:
                out.append((g, e))
        self.syllables = tuple(out)
        self._hash = hash(self.syllables)

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def gen(cls, g, e=1):
        return cls([(g, e)])

    def letters(self):
        """Expanded letters, each (gen, +1) or (gen, -1)."""
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __mul__(self, other):
        return Word(self.syllables + other.syllables)

    def inverse(self):
        return Word((g, -e) for g, e in reversed(self.syllables))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self):
        return self._hash

    def __bool__(self):
        return bool(self.syllables)

    def cyclically_reduced(self):
        s = list(self.syllables)
        while len(s) >= 2 and s[0][0] == s[-1][0]:
            g = s[0][0]
            tot = s[0][1] + s[-1][1]
            s = s[1:-1]
            if tot:
                s = [(g, tot)] + s
                # merged syllable may now cancel against nothing else; loop re-checks ends
        return Word(s)

    def exponent_sums(self, ngens):
        v = [0] * ngens
        for g, e in self.syllables:
            v[g] += e
        return v

    def __repr__(self):
        return f"Word({list(self.syllables)})"

    def format(self, names):
        """Text form with capitals for inverses, e.g. ``abAB``."""
        parts = []
        for g, e in self.syllables:
            sym = names[g] if e > 0 else names[g].upper()
            parts.append(sym * abs(e) if abs(e) <= 3 else f"{sym}^{abs(e)}")
        return "".join(parts) or "1"


def commutator(u, v):
    return u * v * u.inverse() * v.inverse()


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        rels = []
        for r in self.relators:
            if not isinstance(r, Word):
                r = Word(r)
            for g, _ in r.syllables:
                if not 0 <= g < len(gens):
                    raise ValueError(f"relator references undeclared generator {g}")
            r = r.cyclically_reduced()
            if r:
                rels.append(r)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(rels))

    @property
    def ngens(self):
        return len(self.generators)

    @property
    def deficiency(self):
        return self.ngens - len(self.relators)

    def exponent_matrix(self):
        return [r.exponent_sums(self.ngens) for r in self.relators]

    def to_text(self):
        lines = ["gens: " + " ".join(self.generators)]
        lines += ["rel: " + r.format(self.generators) for r in self.relators]
        return "\n".join(lines)

    def to_json(self):
        return {"gens": list(self.generators),
                "rels": [[[self.generators[g], e] for g, e in r.syllables] for r in self.relators]}


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"([A-Za-z])(\^(-?\d+))?")


def parse_word(text, names, line=1, col0=1):
    index = {n: i for i, n in enumerate(names)}
    letters = []
    pos = 0
    text_stripped = text.rstrip()
    while pos < len(text_stripped):
        ch = text_stripped[pos]
        if ch.isspace() or ch == "*":
            pos += 1
            continue
        if ch == "1" and len(text_stripped.strip()) == 1:
            pos += 1
            continue
        m = _TOKEN.match(text_stripped, pos)
        if not m:
            raise ParseError(f"unexpected character {ch!r}", line, col0 + pos)
        sym = m.group(1)
        power = int(m.group(3)) if m.group(2) else 1
        if sym in index:
            letters.append((index[sym], power))
        elif sym.lower() in index and sym.isupper():
            letters.append((index[sym.lower()], -power))
        else:
            raise ParseError(f"unknown generator {sym!r}", line, col0 + pos)
        pos = m.end()
    return Word(letters)


def parse_presentation(text):
    """Parse the line format ``gens: a b`` / ``rel: abAB``.

    Lines may also be separated by ``;``. Generators must be lowercase letters;
    a capital letter is the inverse of its lowercase generator.
    """
    names = None
    rel_lines = []
    lineno = 0
    for raw_line in text.splitlines():
        lineno += 1
        for chunk_start, chunk in _split_semicolons(raw_line):
            stripped = chunk.strip()
            if not stripped or stripped.startswith("#"):
                continue
            key, sep, rest = chunk.partition(":")
            col = chunk_start + len(key) + 2
            key = key.strip().lower()
            if not sep:
                raise ParseError("expected 'gens:' or 'rel:'", lineno, chunk_start + 1)
            if key in ("gens", "generators"):
                names = rest.split()
                for n in names:
                    if len(n) != 1 or not n.islower():
                        raise ParseError(f"generator {n!r} must be one lowercase letter", lineno, col)
                if len(set(names)) != len(names):
                    raise ParseError("duplicate generator", lineno, col)
            elif key in ("rel", "rels", "relator"):
                rel_lines.append((rest, lineno, col))
            else:
                raise ParseError(f"unknown key {key!r}", lineno, chunk_start + 1)
    if names is None:
        raise ParseError("missing 'gens:' line", 1, 1)
    rels = []
    for rest, ln, col in rel_lines:
        for piece in rest.split(","):
            if piece.strip():
                rels.append(parse_word(piece, names, ln, col))
            col += len(piece) + 1
    return GroupPresentation(tuple(names), tuple(rels))


def _split_semicolons(line):
    start = 0
    for part in line.split(";"):
        yield start, part
        start += len(part) + 1


def presentation_from_json(obj):
    """JSON form: {"gens": [...], "rels": [[[gen, exp], ...], ...]}.

    Generators in a relator may be given by name or by index; a relator may
    also be a text word such as "abAB".
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    names = list(obj["gens"])
    index = {n: i for i, n in enumerate(names)}
    rels = []
    for r in obj.get("rels", []):
        if isinstance(r, str):
            rels.append(parse_word(r, names))
            continue
        letters = []
        for g, e in r:
            gi = index[g] if isinstance(g, str) else int(g)
            letters.append((gi, int(e)))
        rels.append(Word(letters))
    return GroupPresentation(tuple(names), tuple(rels))


# ---------------------------------------------------------------- Fox calculus

class GroupRingExpr(dict):
    """Element of Z[F] as a mapping Word -> nonzero int."""

    def add_term(self, w, c):
        c = self.get(w, 0) + c
        if c:
            self[w] = c
        else:
            self.pop(w, None)

    def __add__(self, other):
        out = GroupRingExpr(self)
        for w, c in other.items():
            out.add_term(w, c)
        return out

    def __sub__(self, other):
        out = GroupRingExpr(self)
        for w, c in other.items():
            out.add_term(w, -c)
        return out

    def __mul__(self, other):
        out = GroupRingExpr()
        for w1, c1 in self.items():
            for w2, c2 in other.items():
                out.add_term(w1 * w2, c1 * c2)
        return out

    @classmethod
    def of(cls, w, c=1):
        out = cls()
        out.add_term(w, c)
        return out

    def map(self, hom, ring_add, zero):
        acc = zero
        for w, c in self.items():
            acc = ring_add(acc, hom(w), c)
        return acc


def fox_derivative(p, relator, gen):
    """Free derivative of ``relator`` with respect to generator ``gen``."""
    if not 0 <= gen < p.ngens:
        raise IndexError("generator index out of range")
    out = GroupRingExpr()
    prefix = []
    for g, s in relator.letters():
        if g == gen:
            if s > 0:
                out.add_term(Word(prefix), 1)
            else:
                out.add_term(Word(prefix + [(g, -1)]), -1)
        prefix.append((g, s))
    return out


def fox_jacobian(p):
    return [[fox_derivative(p, r, j) for j in range(p.ngens)] for r in p.relators]


def fundamental_identity_holds(p, relator, derivatives=None):
    """Check sum_j (dr/dx_j)(x_j - 1) == r - 1 in Z[F]."""
    if derivatives is None:
        derivatives = [fox_derivative(p, relator, j) for j in range(p.ngens)]
    lhs = GroupRingExpr()
    for j, d in enumerate(derivatives):
        lhs = lhs + d * (GroupRingExpr.of(Word.gen(j)) - GroupRingExpr.of(Word()))
    rhs = GroupRingExpr.of(relator) - GroupRingExpr.of(Word())
    return lhs == rhs


# ---------------------------------------------------------------- braids

def braid_permutation(braid, strands):
    perm = list(range(strands))
    for s in braid:
        i = abs(s) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return perm


def braid_to_knot_group(braid, strands=None):
    """Knot group of the closure of a braid word, via the Artin action.

    ``braid`` is a list of nonzero ints, ``i`` meaning sigma_i and ``-i`` its
    inverse. Returns a deficiency-one presentation on the strand generators.
    """
    braid = [int(s) for s in braid]
    if any(s == 0 for s in braid):
        raise ValueError("braid letters must be nonzero")
    k = max([abs(s) for s in braid] + [0]) + 1
    if strands is not None:
        if strands < k:
            raise ValueError("braid uses more strands than given")
        k = strands
    perm = braid_permutation(braid, k)
    seen, j = {0}, perm[0]
    while j != 0:
        seen.add(j)
        j = perm[j]
    if len(seen) != k:
        raise NotAKnot(f"closure of {braid} on {k} strands has more than one component")

    images = [Word.gen(i) for i in range(k)]
    for s in braid:
        i = abs(s) - 1
        xi, xj = images[i], images[i + 1]
        if s > 0:
            images[i], images[i + 1] = xi * xj * xi.inverse(), xi
        else:
            images[i], images[i + 1] = xj, xj.inverse() * xi * xj
    rels = [images[i] * Word.gen(i, -1) for i in range(k - 1)]
    names = tuple(_default_names(k))
    return GroupPresentation(names, tuple(rels))


def _default_names(k):
    letters = "abcdefghijklmnopqrstuvwxyz"
    if k > len(letters):
        raise ValueError("too many generators for single-letter names")
    return letters[:k]


# ---------------------------------------------------------------- abelianization

def abelianization(p):
    """(free rank, torsion coefficients) of H_1 of the presented group."""
    M = p.exponent_matrix()
    D, _, _ = smith_normal_form(M, p.ngens)
    diag = [d for d in diagonal(D) if d] if M else []
    rank = p.ngens - len(diag)
    return rank, [d for d in diag if d > 1]


@dataclass(frozen=True)
class CohomologyClass:
    """A homomorphism pi -> Q given by its values on the generators."""

    values: tuple
    scale: Fraction = field(default=Fraction(1), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))

    def evaluate(self, word):
        return sum((self.values[g] * e for g, e in word.syllables), Fraction(0))

    def check(self, p):
        if len(self.values) != p.ngens:
            raise ValueError("class has wrong number of values")
        for r in p.relators:
            if self.evaluate(r) != 0:
                raise ValueError(f"class does not vanish on relator {r.format(p.generators)}")
        return self

    @property
    def is_zero(self):
        return not any(self.values)

    @property
    def is_primitive(self):
        if any(v.denominator != 1 for v in self.values):
            return False
        g = 0
        for v in self.values:
            g = gcd(g, int(v))
        return g == 1

    def primitive(self):
        """Integral primitive multiple; the factor used is kept in ``scale``."""
        if self.is_zero:
            raise ValueError("zero class has no primitive multiple")
        den = 1
        for v in self.values:
            den = lcm(den, v.denominator)
        ints = [int(v * den) for v in self.values]
        g = 0
        for v in ints:
            g = gcd(g, v)
        factor = Fraction(den, g)
        return CohomologyClass(tuple(v // g for v in ints), scale=factor)

    def as_ints(self):
        if any(v.denominator != 1 for v in self.values):
            raise ValueError("class is not integral")
        return tuple(int(v) for v in self.values)


def cohomology_basis(p):
    """Z-basis of Hom(pi, Z), as CohomologyClass objects."""
    basis = integer_kernel(p.exponent_matrix(), p.ngens)
    out = []
    for v in basis:
        first = next(x for x in v if x)
        if first < 0:
            v = [-x for x in v]
        out.append(CohomologyClass(tuple(v)))
    return out


def induced_phi(p):
    """Primitive class when b_1 = 1, otherwise a basis of Hom(pi, Z)."""
    basis = cohomology_basis(p)
    if not basis:
        raise NoFreeQuotient("abelianization has rank 0")
    if len(basis) == 1:
        return basis[0]
    return basis
