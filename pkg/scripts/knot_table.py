"""Alexander polynomial, torsion degree and fibering verdict for a table of braid closures."""

import argparse
import json
from dataclasses import dataclass, field

from novikov_torsion.groups import braid_to_knot_group
from novikov_torsion.torsion import alexander_polynomial, fiber_check

DEFAULT_BRAIDS = {
    "unknot": [1, 2],
    "3_1": [1, 1, 1],
    "4_1": [1, -2, 1, -2],
    "5_1": [1, 1, 1, 1, 1],
    "5_2": [1, 1, 1, 2, -1, 2],
    "7_1": [1] * 7,
    "6_3": [1, 1, -2, 1, -2, -2],
    "8_20": [1, 1, 1, -2, -1, -1, -1, -2],
}


@dataclass
class TableConfig:
    braids: dict = field(default_factory=lambda: dict(DEFAULT_BRAIDS))
    horizon: int = None
    as_json: bool = False


def row(name, braid, horizon):
    p = braid_to_knot_group(braid)
    try:
        delta = alexander_polynomial(p)
    except ValueError as exc:
        return {"name": name, "braid": braid, "error": str(exc)}
    v = fiber_check(p, horizon=horizon).to_json()
    return {"name": name, "braid": braid, "alexander": str(delta),
            "degree": v["degree"], "monic": v["monic"], "verdict": v["verdict"]}


def run(cfg):
    return [row(n, b, cfg.horizon) for n, b in cfg.braids.items()]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--braid", action="append", default=[],
                    help="extra entry as name=1,2,-1 (repeatable)")
    ap.add_argument("--horizon", type=int)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    cfg = TableConfig(horizon=args.horizon, as_json=args.json)
    for item in args.braid:
        name, _, word = item.partition("=")
        cfg.braids[name] = [int(x) for x in word.split(",")]
    rows = run(cfg)
    if cfg.as_json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'knot':8} {'degree':>6} {'monic':>6}  {'verdict':24} alexander")
    for r in rows:
        if "error" in r:
            print(f"{r['name']:8} {r['error']}")
            continue
        print(f"{r['name']:8} {r['degree']:>6} {str(r['monic']):>6}  {r['verdict']:24} {r['alexander']}")


if __name__ == "__main__":
    main()
