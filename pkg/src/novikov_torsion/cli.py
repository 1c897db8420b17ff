"""Command-line front end.  Exit codes: 0 computed, 1 bad input, 2 inconclusive."""

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import groups, hnn, novikov, oracles, polycyclic, surfaces, torsion
from .laurent import determinant

COMMANDS = ("alexander", "torsion", "fiber-check", "novikov", "delta0", "cone",
            "hnn-witness", "weight-reduce", "heisenberg-demo")

EXIT_OK, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2


class InputError(Exception):
    pass


class Inconclusive(Exception):
    def __init__(self, msg, payload=None):
        super().__init__(msg)
        self.payload = payload


@dataclass
class JobSpec:
    command: str
    source: str = None
    braid: list = None
    presentation: str = None
    phi: tuple = None
    gamma: str = "phi"
    horizon: int = None
    direction: str = "both"
    fmt: str = "json"
    oracle: bool = False
    depth: int = 4
    relax: bool = False
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.direction not in ("+", "-", "both"):
            raise InputError("direction must be +, - or both")
        if self.fmt not in ("json", "text"):
            raise InputError("format must be json or text")
        if self.horizon is not None and self.horizon < 1:
            raise InputError("horizon must be positive")
        if self.gamma not in ("phi", "abelianization"):
            raise InputError("gamma must be phi or abelianization")
        if self.depth < 0:
            raise InputError("depth must be nonnegative")

    @property
    def directions(self):
        return {"+": (1,), "-": (-1,), "both": (1, -1)}[self.direction]


# ---------------------------------------------------------------- input

def _read_source(src):
    if src == "-":
        return sys.stdin.read()
    path = Path(src)
    if not path.exists():
        raise InputError(f"no such file: {src}")
    return path.read_text()


def _parse_braid(text):
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"bad braid word {text!r}") from exc


def _parse_phi(text):
    if text is None:
        return None
    try:
        return tuple(Fraction(x) for x in text.replace(" ", "").split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad class {text!r}") from exc


def load_presentation(job):
    if job.braid is not None:
        return groups.braid_to_knot_group(job.braid)
    text = job.presentation
    if text is None:
        if job.source is None:
            raise InputError("give an input file, --braid or --presentation")
        text = _read_source(job.source)
    if text.lstrip().startswith("{"):
        return groups.presentation_from_json(json.loads(text))
    return groups.parse_presentation(text)


def _load_json(job):
    if job.source is None:
        raise InputError("this command needs a JSON input file")
    try:
        return json.loads(_read_source(job.source))
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, col {exc.colno}: {exc.msg}") from exc


# ---------------------------------------------------------------- commands

def _fraction_json(f):
    return {"num": str(f.num), "den": str(f.den)}


def _novikov_block(cx, job):
    out = {}
    for d in job.directions:
        out["plus" if d > 0 else "minus"] = torsion.novikov_vanishes(cx, None, d, job.horizon)
    return out


def _oracle_block(cx, job, novikov_result):
    """Recheck B' through cofactor determinants and coefficient-wise series inversion."""
    if cx.nvars != 1:
        return {"skipped": "oracle handles one-variable coefficients"}
    Bp = cx.reduced_block()
    H = int(job.horizon or novikov.default_horizon())
    det_ok = (not Bp) or oracles.leibniz_det(Bp) == determinant(Bp)
    nov = {}
    for d in job.directions:
        key = "plus" if d > 0 else "minus"
        corners_ok = all(oracles.oracle_invertible(c, d, H) for c in cx.corners())
        nov[key] = corners_ok and ((not Bp) or oracles.oracle_invertible(Bp, d, H))
    agree = det_ok and all(nov[k] == novikov_result.get(k, nov[k]) for k in nov)
    return {"determinant_agrees": det_ok, "novikov": nov, "agree": agree}


def cmd_alexander(job):
    p = load_presentation(job)
    delta = torsion.alexander_polynomial(p)
    coeffs = [delta.terms.get((k,), 0) for k in range(torsion.delta_zero(p) + 1)] \
        if not delta.is_zero() else []
    return {"alexander": str(delta), "coefficients": coeffs}


def cmd_torsion(job):
    p = load_presentation(job)
    cx = torsion.build_complex(p, job.gamma, job.phi)
    tau = torsion.tau_of_complex(cx)
    out = {"tau": None, "degree": None, "coefficients": list(cx.names), "phi": [str(x) for x in cx.phi]}
    if not tau.is_zero():
        out["tau"] = _fraction_json(tau.normalized())
        out["degree"] = torsion._num(torsion.deg_phi_fraction(tau.value, cx.phi))
    if job.oracle:
        out["oracle"] = _oracle_block(cx, job, {})
    return out


def cmd_fiber_check(job):
    p = load_presentation(job)
    cx = torsion.build_complex(p, job.gamma, job.phi)
    out = torsion.verdict_from_complex(cx, horizon=job.horizon).to_json()
    if job.oracle:
        out["oracle"] = _oracle_block(cx, job, out["novikov"])
    return out


def cmd_novikov(job):
    p = load_presentation(job)
    cx = torsion.build_complex(p, job.gamma, job.phi)
    out = {"novikov": _novikov_block(cx, job)}
    if job.oracle:
        out["oracle"] = _oracle_block(cx, job, out["novikov"])
    return out


def cmd_delta0(job):
    return {"delta0": torsion.delta_zero(load_presentation(job))}


def cmd_cone(job):
    p = load_presentation(job)
    cx = torsion.build_complex(p, job.gamma, job.phi)
    if not torsion.novikov_vanishes(cx, None, 1, job.horizon):
        raise Inconclusive("Novikov homology does not vanish for +phi; no cone to probe")
    cons = torsion.fibered_cone_probe(cx)
    return {"phi": [str(x) for x in cx.phi], "coefficients": list(cx.names), **cons.to_json()}


def cmd_hnn_witness(job):
    data = hnn.HnnData.from_json(_load_json(job))
    status = hnn.is_ascending_free_base(data)
    out = {"ascending": status.value}
    if data.base.relators:
        out["witness"] = None
        return out
    action = hnn.build_truncated_action(data, job.depth)
    w = hnn.witness_series(action)
    out.update({"cosets": action.X, "truncated": action.truncated, "depth": action.depth})
    if w:
        if not w.check(action):
            raise AssertionError("witness recursion failed")
        out["witness"] = w.to_json(action)
    else:
        out["witness"] = "NoWitness"
    return out


def cmd_weight_reduce(job):
    obj = _load_json(job)
    g = surfaces.CutGraph.from_json(obj)
    report = surfaces.reduce_weights(g, obj.get("weight"), relax=job.relax)
    return report.to_json()


def cmd_heisenberg_demo(job):
    H = polycyclic.heisenberg()
    phi = tuple(job.phi) if job.phi else (1, 0, 0)
    grading = polycyclic.PcGrading(H, phi)
    x, y = polycyclic.PcElement.of(H, H.gen(0)), polycyclic.PcElement.of(H, H.gen(1))
    examples = {}
    for label, el in (("1 - x", 1 - x), ("2 - x", 2 - x), ("y - x", y - x)):
        examples[label] = polycyclic.pc_invertibility(el, grading).value
    p = groups.parse_presentation("gens: x y\nrel: xxyXYXyxYX")
    cx = torsion.build_pc_complex(p, H, [H.gen(0), H.gen(1)], grading)
    nov = {}
    for d in job.directions:
        try:
            nov["plus" if d > 0 else "minus"] = torsion.pc_novikov_vanishes(cx, d)
        except novikov.Degenerate:
            raise Inconclusive("leading slice is a zero divisor", {"examples": examples})
    xy = H.mul(H.gen(0), H.gen(1))
    return {
        "phi": [str(v) for v in grading.phi],
        "collect": {"y*x": H.format(H.mul(H.gen(1), H.gen(0))), "(x*y)^2": H.format(H.mul(xy, xy))},
        "invertibility": examples,
        "presentation": p.to_text(),
        "novikov": nov,
    }


HANDLERS = {
    "alexander": cmd_alexander, "torsion": cmd_torsion, "fiber-check": cmd_fiber_check,
    "novikov": cmd_novikov, "delta0": cmd_delta0, "cone": cmd_cone,
    "hnn-witness": cmd_hnn_witness, "weight-reduce": cmd_weight_reduce,
    "heisenberg-demo": cmd_heisenberg_demo,
}


INPUT_ERRORS = (InputError, groups.ParseError, groups.NotAKnot, groups.NoFreeQuotient,
                novikov.BadShape, torsion.NoPhiNonzeroGenerator, surfaces.StrictInequalityBranch,
                surfaces.EmptySide, hnn.NotSurjective, ValueError, KeyError)
INCONCLUSIVE = (Inconclusive, novikov.Degenerate, polycyclic.UnsupportedKernel,
                torsion.NotNormalizable)


def run(job):
    """Returns (exit code, report dict)."""
    try:
        report = HANDLERS[job.command](job)
    except INCONCLUSIVE as exc:
        payload = getattr(exc, "payload", None) or {}
        return EXIT_INCONCLUSIVE, {"inconclusive": str(exc), **payload}
    except INPUT_ERRORS as exc:
        return EXIT_INPUT, {"error": _describe(exc)}
    oracle = report.get("oracle") if isinstance(report, dict) else None
    if oracle and oracle.get("agree") is False:
        return EXIT_INCONCLUSIVE, report
    return EXIT_OK, report


def _describe(exc):
    return str(exc) or type(exc).__name__


def render(report, fmt):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    lines = []

    def walk(obj, prefix):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(obj[k], f"{prefix}{k}.")
        else:
            lines.append(f"{prefix[:-1]}: {obj}")

    walk(report, "")
    return "\n".join(lines)


def build_parser():
    ap = argparse.ArgumentParser(prog="novikov-torsion", description=__doc__)
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("input", nargs="?", help="presentation, HNN or cut-graph file ('-' for stdin)")
    ap.add_argument("--braid", help="comma-separated braid word, e.g. 1,-2,1,-2 (use --braid=-1,2 "
                                    "when it starts with a minus)")
    ap.add_argument("--presentation", help="inline presentation, e.g. 'gens: a b; rel: abAB'")
    ap.add_argument("--phi", help="class as comma-separated values on the generators")
    ap.add_argument("--gamma", default="phi", choices=("phi", "abelianization"))
    ap.add_argument("--horizon", type=int, default=None)
    ap.add_argument("--direction", default="both", choices=("+", "-", "both"))
    ap.add_argument("--format", dest="fmt", default="json", choices=("json", "text"))
    ap.add_argument("--oracle", action="store_true", help="recheck verdicts with the slow oracles")
    ap.add_argument("--depth", type=int, default=4, help="coset enumeration depth (hnn-witness)")
    ap.add_argument("--relax", action="store_true", help="weight-reduce: allow complexity drops")
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        job = JobSpec(
            command=args.command, source=args.input,
            braid=_parse_braid(args.braid) if args.braid is not None else None,
            presentation=args.presentation,
            phi=_parse_phi(args.phi), gamma=args.gamma, horizon=args.horizon,
            direction=args.direction, fmt=args.fmt, oracle=args.oracle, depth=args.depth,
            relax=args.relax)
    except InputError as exc:
        print(render({"error": str(exc)}, args.fmt))
        return EXIT_INPUT
    code, report = run(job)
    print(render(report, job.fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
