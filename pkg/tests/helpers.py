import random

from hypothesis import strategies as st

from novikov_torsion.groups import GroupPresentation, Word, cohomology_basis
from novikov_torsion.laurent import LaurentElement


def laurents(nvars=1, max_terms=4, exp=3, coef=4, nonzero=False):
    term = st.tuples(st.tuples(*[st.integers(-exp, exp)] * nvars),
                     st.integers(-coef, coef).filter(bool))
    return st.lists(term, min_size=1 if nonzero else 0, max_size=max_terms).map(
        lambda ts: LaurentElement(_merge(ts), nvars)).filter(lambda p: not nonzero or not p.is_zero())


def _merge(ts):
    out = {}
    for e, c in ts:
        out[e] = out.get(e, 0) + c
    return out


def random_laurent(rng, nvars=1, terms=3, exp=2, coef=3, low=None):
    out = {}
    for _ in range(rng.randint(1, terms)):
        e = tuple(rng.randint(-exp if low is None else low, exp) for _ in range(nvars))
        out[e] = out.get(e, 0) + rng.choice([c for c in range(-coef, coef + 1) if c])
    return LaurentElement(out, nvars)


def random_word(rng, ngens, length):
    return Word([(rng.randrange(ngens), rng.choice((1, -1))) for _ in range(length)])


def random_presentation(rng, ngens, nrels, max_len=8):
    rels = []
    while len(rels) < nrels:
        w = random_word(rng, ngens, rng.randint(1, max_len)).cyclically_reduced()
        if w:
            rels.append(w)
    return GroupPresentation(tuple("abcdefgh"[:ngens]), tuple(rels))


def random_class(rng, p):
    """A random primitive class in Hom(pi, Z), or None if there is none."""
    basis = cohomology_basis(p)
    if not basis:
        return None
    while True:
        coeffs = [rng.randint(-2, 2) for _ in basis]
        if any(coeffs):
            break
    vals = [sum(c * b.values[j] for c, b in zip(coeffs, basis)) for j in range(p.ngens)]
    from math import gcd
    g = 0
    for v in vals:
        g = gcd(g, int(v))
    return tuple(int(v) // g for v in vals) if g else None


def seeded(seed):
    return random.Random(seed)


def random_transitive_pair(rng, n):
    """Two permutations of range(n) generating a transitive group."""
    while True:
        perms = []
        for _ in range(2):
            p = list(range(n))
            rng.shuffle(p)
            perms.append(p)
        seen, stack = {0}, [0]
        while stack:
            v = stack.pop()
            for p in perms:
                for u in (p[v], p.index(v)):
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
        if len(seen) == n:
            return perms


def schreier_generators(perms):
    """Free generators of the stabilizer of 0 in F_2 acting through ``perms``.

    Points are reached by a breadth-first spanning tree; each non-tree edge
    v --g--> u gives the loop tree(v) g tree(u)^-1.
    """
    n = len(perms[0])
    tree = {0: Word()}
    order = [0]
    tree_edges = set()
    for v in order:
        for g, p in enumerate(perms):
            for s, u in ((1, p[v]), (-1, p.index(v))):
                if u not in tree:
                    tree[u] = tree[v] * Word.gen(g, s)
                    order.append(u)
                    tree_edges.add((v, g, u) if s > 0 else (u, g, v))
    gens = []
    for v in range(n):
        for g, p in enumerate(perms):
            if (v, g, p[v]) not in tree_edges:
                gens.append(tree[v] * Word.gen(g) * tree[p[v]].inverse())
    return gens


def apply_word(perms, w, v=0):
    # right action: letters are applied left to right
    for g, s in w.letters():
        v = perms[g][v] if s > 0 else perms[g].index(v)
    return v


def cut_shapes(max_regions=3, max_edges=4, chis=(0, 1)):
    """Connected directed multigraphs as sorted tuples of (src, dst, chi), vertex 0 distinguished."""
    from itertools import combinations_with_replacement
    for r in range(1, max_regions + 1):
        items = [(a, b, c) for a in range(r) for b in range(r) for c in chis]
        for m in range(1, max_edges + 1):
            for edges in combinations_with_replacement(items, m):
                if _connected(r, edges):
                    yield r, edges


def _connected(r, edges):
    seen, stack = {0}, [0]
    adj = {v: set() for v in range(r)}
    for a, b, _ in edges:
        adj[a].add(b)
        adj[b].add(a)
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == r


def scalar_circulations(r, edges, lo=-2, hi=2):
    """Integer edge labels in [lo, hi] with zero net flow at every vertex."""
    from itertools import product
    out = []
    for c in product(range(lo, hi + 1), repeat=len(edges)):
        net = [0] * r
        for x, (a, b, _) in zip(c, edges):
            net[b] += x
            net[a] -= x
        if not any(net):
            out.append(c)
    return out


def complement_connected_bfs(r, edges, w):
    """Regions glued along zero-weight edges form one piece."""
    adj = {v: [] for v in range(r)}
    for wi, (a, b, _) in zip(w, edges):
        if wi == 0:
            adj[a].append(b)
            adj[b].append(a)
    seen, stack = {0}, [0]
    while stack:
        for u in adj[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == r


def good_weights(r, edges, w0, circulations, bound=6):
    """Exhaustive search: weights v <= bound with every class and the complexity of w0 kept
    and connected complement."""
    from itertools import product
    chi0 = sum(x * e[2] for x, e in zip(w0, edges))
    out = []
    for v in product(range(bound + 1), repeat=len(edges)):
        if sum(x * e[2] for x, e in zip(v, edges)) != chi0:
            continue
        if any(sum((a - b) * c for a, b, c in zip(v, w0, circ)) for circ in circulations):
            continue
        if complement_connected_bfs(r, edges, v):
            out.append(v)
    return out


def independent_rows(rows):
    """A maximal linearly independent subset of integer vectors (Gaussian elimination over Q)."""
    from fractions import Fraction
    basis, reduced = [], []
    for r in rows:
        v = [Fraction(x) for x in r]
        for piv, b in reduced:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is not None:
            reduced.append((piv, v))
            basis.append(tuple(r))
    return basis
