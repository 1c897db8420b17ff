"""Run weight reduction on every small connected cut graph and count the outcomes."""

import argparse
from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement

from novikov_torsion.surfaces import (CutGraph, Edge, EmptySide, StrictInequalityBranch,
                                      reduce_weights)


@dataclass
class CensusConfig:
    max_regions: int = 3
    max_edges: int = 4
    chis: tuple = (0, 1)
    relax: bool = False


def connected(r, edges):
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for a, b, _ in edges:
            for x, y in ((a, b), (b, a)):
                if x == v and y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == r


def shapes(cfg):
    for r in range(1, cfg.max_regions + 1):
        items = [(a, b, c) for a in range(r) for b in range(r) for c in cfg.chis]
        for m in range(1, cfg.max_edges + 1):
            for edges in combinations_with_replacement(items, m):
                if connected(r, edges):
                    yield r, edges


def census(cfg):
    tally = Counter()
    for r, edges in shapes(cfg):
        g = CutGraph(r, tuple(Edge(a, b, c, (0,)) for a, b, c in edges))
        try:
            rep = reduce_weights(g, relax=cfg.relax)
        except StrictInequalityBranch:
            tally["strict inequality"] += 1
            continue
        except EmptySide:
            tally["empty side"] += 1
            continue
        if not rep.started_disconnected:
            tally["already connected"] += 1
        else:
            tally[f"reduced in {len(rep.steps)} step(s), ok={rep.ok}"] += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--regions", type=int, default=3)
    ap.add_argument("--edges", type=int, default=4)
    ap.add_argument("--relax", action="store_true")
    a = ap.parse_args()
    tally = census(CensusConfig(a.regions, a.edges, relax=a.relax))
    for k, v in sorted(tally.items()):
        print(f"{v:6}  {k}")


if __name__ == "__main__":
    main()
