"""Random deficiency-one presentations: compare monicness of the torsion with
two-sided Novikov vanishing and tally the verdicts."""

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from math import gcd

from novikov_torsion.groups import GroupPresentation, Word, cohomology_basis
from novikov_torsion.laurent import monic_fraction
from novikov_torsion.torsion import build_complex, novikov_vanishes, tau_of_complex


@dataclass
class SweepConfig:
    count: int = 300
    seed: int = 0
    max_gens: int = 3
    max_len: int = 10


def random_presentation(rng, ngens, max_len):
    rels = []
    while len(rels) < ngens - 1:
        w = Word([(rng.randrange(ngens), rng.choice((1, -1)))
                  for _ in range(rng.randint(1, max_len))]).cyclically_reduced()
        if w:
            rels.append(w)
    return GroupPresentation(tuple("abcdefgh"[:ngens]), tuple(rels))


def random_class(rng, p):
    basis = cohomology_basis(p)
    if not basis:
        return None
    coeffs = [rng.randint(-2, 2) for _ in basis]
    vals = [int(sum(c * b.values[j] for c, b in zip(coeffs, basis))) for j in range(p.ngens)]
    g = 0
    for v in vals:
        g = gcd(g, v)
    return tuple(v // g for v in vals) if g else None


def sweep(cfg):
    rng = random.Random(cfg.seed)
    tally = Counter()
    done = 0
    while done < cfg.count:
        p = random_presentation(rng, rng.randint(2, cfg.max_gens), cfg.max_len)
        phi = random_class(rng, p)
        if phi is None:
            continue
        cx = build_complex(p, "phi", phi)
        tau = tau_of_complex(cx)
        if tau.is_zero():
            tally["tau zero (skipped)"] += 1
            continue
        plus = novikov_vanishes(cx, None, 1)
        minus = novikov_vanishes(cx, None, -1)
        monic = monic_fraction(tau.value, cx.phi)
        tally[f"monic={monic} plus={plus} minus={minus}"] += 1
        tally["agree" if monic == (plus and minus) else "DISAGREE"] += 1
        done += 1
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-gens", type=int, default=3)
    ap.add_argument("--max-len", type=int, default=10)
    a = ap.parse_args()
    tally = sweep(SweepConfig(a.count, a.seed, a.max_gens, a.max_len))
    for k, v in sorted(tally.items()):
        print(f"{v:6}  {k}")


if __name__ == "__main__":
    main()
