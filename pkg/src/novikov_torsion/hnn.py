"""HNN extensions over free bases: subgroup graphs, the ascending test and kernel witnesses."""

import enum
import math
from collections import deque
from dataclasses import dataclass

from .groups import GroupPresentation, Word, parse_word, presentation_from_json


class NotSurjective(ValueError):
    pass


class AscendingStatus(enum.Enum):
    ASCENDING = "Ascending"
    NOT_ASCENDING = "NotAscending"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class HnnData:
    """<B, t | R, t a t^-1 = gamma(a)> with ``assoc`` generating A and ``images`` = gamma(assoc)."""

    base: GroupPresentation
    assoc: tuple
    images: tuple
    stable_letter: str = "t"

    def __post_init__(self):
        if len(self.assoc) != len(self.images):
            raise ValueError("need one image per associated generator")
        for w in tuple(self.assoc) + tuple(self.images):
            if any(not 0 <= g < self.base.ngens for g, _ in w.syllables):
                raise ValueError("word uses a generator outside the base")

    def presentation(self):
        t = Word.gen(self.base.ngens)
        rels = tuple(self.base.relators)
        rels += tuple(t * a * t.inverse() * g.inverse() for a, g in zip(self.assoc, self.images))
        return GroupPresentation(tuple(self.base.generators) + (self.stable_letter,), rels)

    @classmethod
    def from_json(cls, obj):
        base = presentation_from_json(obj["base"])

        def word(x):
            if isinstance(x, str):
                return parse_word(x, base.generators)
            return Word([(int(g), int(e)) for g, e in x])

        return cls(base, tuple(word(x) for x in obj.get("assoc", [])),
                   tuple(word(x) for x in obj.get("images", [])),
                   obj.get("stable_letter", "t"))


# ---------------------------------------------------------------- Stallings folding

class SubgroupGraph:
    """Folded core graph of the subgroup of F(rank) generated by ``words``.

    Vertices are numbered canonically (breadth first from the base point 0,
    visiting outgoing then incoming edges in generator order), so two generating
    sets of the same subgroup give identical graphs.
    """

    def __init__(self, words, rank):
        self.rank = rank
        edges = set()
        nv = 1
        for w in words:
            letters = (w if isinstance(w, Word) else Word(w)).letters()
            if any(not 0 <= g < rank for g, _ in letters):
                raise ValueError("generator index out of range")
            v = 0
            for n, (g, s) in enumerate(letters):
                if n == len(letters) - 1:
                    u = 0
                else:
                    u, nv = nv, nv + 1
                edges.add((v, g, u) if s > 0 else (u, g, v))
                v = u
        edges = _fold(edges, nv)
        edges = _trim(edges)
        self.out, self.inc = _canonical(edges, rank)

    @property
    def nvertices(self):
        return len(self.out)

    def edges(self):
        return sorted((v, g, u) for v, d in enumerate(self.out) for g, u in d.items())

    def key(self):
        return (self.rank, tuple(self.edges()))

    def __eq__(self, other):
        return isinstance(other, SubgroupGraph) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def is_complete(self):
        return all(len(self.out[v]) == self.rank and len(self.inc[v]) == self.rank
                   for v in range(self.nvertices))

    def index(self):
        return self.nvertices if self.is_complete() else math.inf

    def is_rose(self):
        return self.nvertices == 1 and self.is_complete()

    def read(self, word, start=0):
        """Follow ``word`` from ``start``; returns (vertex, unread letters)."""
        letters = (word if isinstance(word, Word) else Word(word)).letters()
        v = start
        for n, (g, s) in enumerate(letters):
            nxt = (self.out if s > 0 else self.inc)[v].get(g)
            if nxt is None:
                return v, tuple(letters[n:])
            v = nxt
        return v, ()

    def contains(self, word):
        v, rest = self.read(word)
        return v == 0 and not rest


def _fold(edges, nv):
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    while True:
        edges = {(find(v), g, find(u)) for v, g, u in edges}
        out, inc = {}, {}
        merge = None
        for v, g, u in sorted(edges):
            t = out.setdefault((v, g), u)
            if t != u:
                merge = (t, u)
                break
            s = inc.setdefault((u, g), v)
            if s != v:
                merge = (s, v)
                break
        if merge is None:
            return edges
        a, b = find(merge[0]), find(merge[1])
        # keep the base point as representative
        if b == 0:
            a, b = b, a
        parent[b] = a


def _trim(edges):
    edges = set(edges)
    while True:
        deg = {}
        for v, _, u in edges:
            deg[v] = deg.get(v, 0) + 1
            deg[u] = deg.get(u, 0) + 1
        leaves = {v for v, d in deg.items() if d == 1 and v != 0}
        if not leaves:
            return edges
        edges = {e for e in edges if e[0] not in leaves and e[2] not in leaves}


def _canonical(edges, rank):
    out_map, inc_map = {}, {}
    for v, g, u in edges:
        out_map.setdefault(v, {})[g] = u
        inc_map.setdefault(u, {})[g] = v
    label = {0: 0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for g in range(rank):
            for nbr in (out_map.get(v, {}).get(g), inc_map.get(v, {}).get(g)):
                if nbr is not None and nbr not in label:
                    label[nbr] = len(label)
                    queue.append(nbr)
    n = len(label)
    out = [dict() for _ in range(n)]
    inc = [dict() for _ in range(n)]
    for v, g, u in edges:
        out[label[v]][g] = label[u]
        inc[label[u]][g] = label[v]
    return out, inc


def is_ascending_free_base(h):
    """A = B exactly when the folded graph of A is the rose on the base generators."""
    if h.base.relators:
        return AscendingStatus.UNKNOWN
    graph = SubgroupGraph(h.assoc, h.base.ngens)
    return AscendingStatus.ASCENDING if graph.is_rose() else AscendingStatus.NOT_ASCENDING


# ---------------------------------------------------------------- coset actions

@dataclass
class TruncatedCosetAction:
    """Finite pieces of the coset sets: ``iota`` X -> Y and ``gamma`` X -> X, as index lists."""

    X: list
    Y: list
    iota: list
    gamma: list
    depth: int
    truncated: bool = False

    def __post_init__(self):
        nx, ny = len(self.X), len(self.Y)
        if len(self.iota) != nx or len(self.gamma) != nx:
            raise ValueError("maps must be total on X")
        if any(not 0 <= y < ny for y in self.iota) or any(not 0 <= x < nx for x in self.gamma):
            raise ValueError("map value out of range")

    def iota_of(self, f):
        out = {}
        for x, c in f.items():
            y = self.iota[x]
            out[y] = out.get(y, 0) + c
        return {y: c for y, c in out.items() if c}

    def gamma_of(self, f):
        out = {}
        for x, c in f.items():
            x2 = self.gamma[x]
            out[x2] = out.get(x2, 0) + c
        return {x: c for x, c in out.items() if c}


def _coset_label(graph, word):
    v, rest = graph.read(word)
    return (v, rest)


def build_truncated_action(h, depth=4):
    """Cosets of A in the free base B reachable by words of length <= depth.

    A coset A w is labelled by the vertex reached reading w in the folded graph of A
    together with the unread suffix (nonempty only off the graph, i.e. when A has
    infinite index).  ``truncated`` is set whenever the enumeration cannot close up.
    """
    if h.base.relators:
        raise ValueError("the coset enumeration needs a free base")
    k = h.base.ngens
    graph = SubgroupGraph(h.assoc, k)
    labels = {}
    order = []
    frontier = [Word()]
    seen_words = {Word()}
    for _ in range(depth + 1):
        nxt = []
        for w in frontier:
            lab = _coset_label(graph, w)
            if lab not in labels:
                labels[lab] = len(order)
                order.append(w)
            for g in range(k):
                for s in (1, -1):
                    w2 = w * Word.gen(g, s)
                    if len(w2) <= depth and w2 not in seen_words:
                        seen_words.add(w2)
                        nxt.append(w2)
        frontier = nxt
    truncated = not graph.is_complete()
    X = [w.format(h.base.generators) for w in order]
    return TruncatedCosetAction(X, ["B"], [0] * len(X), [0] * len(X), depth, truncated)


@dataclass
class WitnessSeries:
    terms: list
    truncated: bool = False

    def check(self, c):
        if not self.terms or not any(self.terms[0].values()):
            return False
        if c.iota_of(self.terms[0]):
            return False
        for a, b in zip(self.terms, self.terms[1:]):
            if c.iota_of(b) != c.iota_of(c.gamma_of(a)):
                return False
        return True

    def to_json(self, c=None):
        name = (lambda x: c.X[x]) if c is not None else str
        return {"terms": [{name(x): v for x, v in sorted(f.items())} for f in self.terms],
                "truncated": self.truncated}


class _NoWitness:
    def __repr__(self):
        return "NoWitness"

    def __bool__(self):
        return False


NoWitness = _NoWitness()


def witness_series(c):
    """Kernel element f_0 of iota and the lifts f_(i+1) of gamma(f_i) along iota.

    Returns NoWitness when iota is injective.  The lift f_(i+1) = gamma(f_i) is
    taken, which solves iota(f_(i+1)) = iota(gamma(f_i)) exactly.
    """
    hit = set(c.iota)
    if len(hit) != len(c.Y):
        raise NotSurjective("iota misses some coset of B")
    fibers = {}
    for x, y in enumerate(c.iota):
        fibers.setdefault(y, []).append(x)
    pair = next((f[:2] for _, f in sorted(fibers.items(), key=lambda kv: min(kv[1]))
                 if len(f) > 1), None)
    if pair is None:
        return NoWitness
    f = {pair[0]: 1, pair[1]: -1}
    terms = [f]
    for _ in range(c.depth):
        f = c.gamma_of(f)
        terms.append(f)
    return WitnessSeries(terms, c.truncated)


__all__ = [
    "AscendingStatus", "HnnData", "NoWitness", "NotSurjective", "SubgroupGraph",
    "TruncatedCosetAction", "WitnessSeries", "build_truncated_action",
    "is_ascending_free_base", "witness_series",
]
