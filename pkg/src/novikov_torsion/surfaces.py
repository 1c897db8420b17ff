"""Cut graphs of decomposing surfaces and the weight-reduction procedure."""

import enum
from dataclasses import dataclass, field


class StrictInequalityBranch(ValueError):
    def __init__(self, region, plus, minus):
        super().__init__(f"region {region}: chi sums differ ({plus} vs {minus})")
        self.region, self.plus, self.minus = region, plus, minus


class EmptySide(ValueError):
    def __init__(self, region, side):
        super().__init__(f"region {region}: no surface on the {side} side")
        self.region, self.side = region, side


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    chi: int
    cls: tuple

    def to_json(self):
        return {"from": self.src, "to": self.dst, "chi": self.chi, "class": list(self.cls)}


@dataclass(frozen=True)
class CutGraph:
    """Regions of the complement as vertices, surface components as directed edges.

    Each edge points from the region on the negative side of its surface to the
    region on the positive side; ``chi`` is the complexity of that component and
    ``cls`` its homology class.
    """

    regions: int
    edges: tuple

    def __post_init__(self):
        edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in self.edges)
        edges = tuple(Edge(int(e.src), int(e.dst), int(e.chi), tuple(int(x) for x in e.cls))
                      for e in edges)
        object.__setattr__(self, "edges", edges)
        if self.regions < 1:
            raise ValueError("need at least one region")
        rank = {len(e.cls) for e in edges}
        if len(rank) > 1:
            raise ValueError("classes must share one ambient rank")
        for e in edges:
            if not (0 <= e.src < self.regions and 0 <= e.dst < self.regions):
                raise ValueError("edge endpoint out of range")
            if e.chi < 0:
                raise ValueError("complexity must be nonnegative")
        for v in range(self.regions):
            if any(self.boundary(v)):
                raise ValueError(f"boundary of region {v} is not null-homologous")
        if _components(self.regions, [(e.src, e.dst) for e in edges]) != 1:
            raise ValueError("cut graph must be connected")

    @property
    def rank(self):
        return len(self.edges[0].cls) if self.edges else 0

    def boundary(self, v, weight=None):
        """Signed sum of incident classes (incoming minus outgoing)."""
        out = [0] * self.rank
        for i, e in enumerate(self.edges):
            c = 1 if weight is None else weight[i]
            s = (e.dst == v) - (e.src == v)
            for k, x in enumerate(e.cls):
                out[k] += s * c * x
        return tuple(out)

    def total_class(self, w):
        out = [0] * self.rank
        for wi, e in zip(w, self.edges):
            for k, x in enumerate(e.cls):
                out[k] += wi * x
        return tuple(out)

    def chi_total(self, w):
        return sum(wi * e.chi for wi, e in zip(w, self.edges))

    def to_json(self):
        return {"regions": self.regions, "edges": [e.to_json() for e in self.edges]}

    @classmethod
    def from_json(cls, obj):
        edges = tuple(Edge(e["from"], e["to"], e.get("chi", 0), tuple(e.get("class", ())))
                      for e in obj["edges"])
        return cls(int(obj["regions"]), edges)


@dataclass(frozen=True)
class Weight:
    w: tuple

    def __post_init__(self):
        w = tuple(int(x) for x in self.w)
        if any(x < 0 for x in w):
            raise ValueError("weights are nonnegative")
        object.__setattr__(self, "w", w)

    def __len__(self):
        return len(self.w)

    def __getitem__(self, i):
        return self.w[i]

    def __iter__(self):
        return iter(self.w)

    @property
    def total(self):
        return sum(self.w)

    @property
    def nsupport(self):
        return sum(1 for x in self.w if x)

    def support(self):
        return tuple(i for i, x in enumerate(self.w) if x)


def _components(n, pairs):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return len({find(v) for v in range(n)})


def _labels(g, w):
    parent = list(range(g.regions))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for wi, e in zip(w, g.edges):
        if wi == 0:
            ra, rb = find(e.src), find(e.dst)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return [find(v) for v in range(g.regions)]


def complement_components(g, w):
    """Components of the complement of the weighted support: zero-weight edges are contracted."""
    if len(w) != len(g.edges):
        raise ValueError("weight length differs from the number of edges")
    return len(set(_labels(g, w)))


@dataclass
class WeightReport:
    final_weight: Weight
    class_preserved: bool
    chi_preserved: bool
    complement_connected: bool
    total_ge_two: bool
    started_disconnected: bool = False
    steps: list = field(default_factory=list)
    chi_before: int = 0
    chi_after: int = 0

    @property
    def ok(self):
        return (self.class_preserved and self.chi_preserved and self.complement_connected
                and self.total_ge_two)

    def to_json(self):
        return {
            "weight": list(self.final_weight.w),
            "total": self.final_weight.total,
            "class_preserved": self.class_preserved,
            "chi_preserved": self.chi_preserved,
            "complement_connected": self.complement_connected,
            "total_ge_two": self.total_ge_two,
            "started_disconnected": self.started_disconnected,
            "chi_before": self.chi_before,
            "chi_after": self.chi_after,
            "steps": [list(s) for s in self.steps],
        }


def reduce_weights(g, w0=None, relax=False):
    """Shrink the support of w0 until the complement of the weighted surface is connected.

    At each step the region class Y containing the smallest vertex is examined;
    edges of positive weight leaving Y form the plus side, those entering it the
    minus side.  With equal complexity sums the smallest-weight edge (lowest
    index on ties) is emptied by moving its weight across, which keeps the
    total class and the weighted complexity.  Unequal sums raise
    StrictInequalityBranch unless ``relax`` is set, in which case the weight
    moves off the costlier side and the weighted complexity drops.
    """
    w = list(Weight(w0 if w0 is not None else (1,) * len(g.edges)).w)
    if len(w) != len(g.edges):
        raise ValueError("weight length differs from the number of edges")
    cls0 = g.total_class(w)
    chi0 = g.chi_total(w)
    started = complement_components(g, w) > 1
    steps = []
    for _ in range(len(w) + 1):
        labels = _labels(g, w)
        if len(set(labels)) == 1:
            break
        Y = labels[0]
        plus = [i for i, e in enumerate(g.edges)
                if w[i] and labels[e.src] == Y and labels[e.dst] != Y]
        minus = [i for i, e in enumerate(g.edges)
                 if w[i] and labels[e.dst] == Y and labels[e.src] != Y]
        if not plus:
            raise EmptySide(0, "plus")
        if not minus:
            raise EmptySide(0, "minus")
        sp = sum(g.edges[i].chi for i in plus)
        sm = sum(g.edges[i].chi for i in minus)
        if sp == sm:
            i = min(plus + minus, key=lambda j: (w[j], j))
            drop, gain = (plus, minus) if i in plus else (minus, plus)
        elif not relax:
            raise StrictInequalityBranch(0, sp, sm)
        else:
            drop, gain = (plus, minus) if sp > sm else (minus, plus)
            i = min(drop, key=lambda j: (w[j], j))
        m = w[i]
        for j in drop:
            w[j] -= m
        for j in gain:
            w[j] += m
        steps.append(tuple(w))
        if g.total_class(w) != cls0:
            raise AssertionError("class changed during reduction")
        if not relax and g.chi_total(w) != chi0:
            raise AssertionError("complexity changed during reduction")
    else:
        raise AssertionError("reduction did not terminate")
    final = Weight(tuple(w))
    connected = complement_components(g, w) == 1
    return WeightReport(
        final_weight=final,
        class_preserved=g.total_class(w) == cls0,
        chi_preserved=g.chi_total(w) == chi0,
        complement_connected=connected,
        total_ge_two=(final.total > 1) or not started,
        started_disconnected=started,
        steps=steps,
        chi_before=chi0,
        chi_after=g.chi_total(w),
    )


class ObstructionKind(enum.Enum):
    NO_OBSTRUCTION = "NoObstruction"
    CONTRADICTION = "Contradiction"
    CONSISTENT = "Consistent"


@dataclass
class Obstruction:
    kind: ObstructionKind
    edge: int = None
    multiplicity: int = None
    report: WeightReport = None
    detail: str = ""

    def to_json(self):
        return {"kind": self.kind.value, "edge": self.edge, "multiplicity": self.multiplicity,
                "detail": self.detail,
                "report": None if self.report is None else self.report.to_json()}


def connectedness_obstruction(g, w0=None, phi_primitive=True, tau_nonzero=True):
    """Run the reduction on a surface with disconnected complement and read off the verdict.

    A reduced weight concentrated on one component with multiplicity n > 1 makes the
    dual class n times another class, which is impossible for a primitive class.
    """
    w = Weight(w0 if w0 is not None else (1,) * len(g.edges))
    if complement_components(g, w.w) == 1:
        return Obstruction(ObstructionKind.NO_OBSTRUCTION, detail="complement already connected")
    if not tau_nonzero:
        return Obstruction(ObstructionKind.NO_OBSTRUCTION, detail="torsion vanishes")
    rep = reduce_weights(g, w.w)
    v = rep.final_weight
    if v.nsupport == 1:
        i = v.support()[0]
        n = v[i]
        if n > 1 and phi_primitive:
            return Obstruction(ObstructionKind.CONTRADICTION, i, n, rep,
                               f"class is {n} times the class of component {i}")
        return Obstruction(ObstructionKind.CONSISTENT, i, n, rep,
                           "multiplicity compatible with the divisibility of phi")
    return Obstruction(ObstructionKind.CONSISTENT, None, None, rep,
                       "reduced surface has several components")
