"""Command-line interface: ``sublorentz <command> [options]``.

Data goes to stdout (or --output), diagnostics to stderr.  Exit codes: 0 on
success, 2 on domain errors (bad theta, singular W, malformed endpoint), 1 on
I/O errors.  Floats are written with 17 significant digits.
"""
import argparse
import json
import math
import os
import sys

import numpy as np

from . import em_field as em
from . import geodesic_engine as ge
from . import hamiltonian_oracle as ho
from . import heisenberg as hz
from . import reachability as rc
from .algebra import causal_classify
from .errors import DomainError

SCHEMA_VERSION = 1
CSV_HEADER = "t,x0,x1,x2,x3,z1,z2,z3,causal"
FORMAT_ENV = "SUBLORENTZ_DEFAULT_FORMAT"

_NATURAL_FORMAT = {
    "shoot": "csv", "mu": "csv", "roots": "csv",
    "connect": "json", "em": "json", "oracle": "json", "heis": "json",
}


def fmt_float(v):
    v = float(v)
    if math.isnan(v) or math.isinf(v):
        return "null"
    return "%.17g" % v


def to_json(obj):
    """JSON text with every float written as %.17g; NaN and inf become null."""
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _floats(n):
    def parse(text):
        try:
            vals = [float(s) for s in text.split(",")]
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {text!r}")
        if len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated numbers, got {len(vals)}")
        return np.array(vals)
    return parse


def _positive_int(minimum):
    def parse(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return v
    return parse


def build_parser():
    p = argparse.ArgumentParser(
        prog="sublorentz",
        description="Shoot and connect geodesics on the 7-dimensional quaternionic group with a Lorentzian horizontal metric.",
        epilog=f"Default output format per command; override with --format or {FORMAT_ENV}=csv|json.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--output", default="-", help="output file (default: stdout)")

    sp = sub.add_parser("shoot", help="sample the geodesic with costate theta and initial velocity v0")
    sp.add_argument("--theta", type=_floats(3), required=True, help="t1,t2,t3")
    sp.add_argument("--v0", type=_floats(4), required=True,
                    help="initial velocity in canonical coordinates")
    sp.add_argument("--phase", type=float, default=0.0, help="rotation of the canonical frame in its (2,3) plane")
    sp.add_argument("--samples", type=_positive_int(2), default=101)
    sp.add_argument("--t-end", type=float, default=1.0)
    sp.add_argument("--frame", choices=("original", "canonical"), default="original",
                    help="coordinates of the x columns")
    common(sp)

    sp = sub.add_parser("connect", help="geodesics from the origin to an endpoint",
                        description="Endpoint order is x0,x1,x2,x3,z1,z2,z3 with x in canonical "
                                    "coordinates and z in original coordinates.")
    sp.add_argument("--endpoint", type=_floats(7), required=True)
    sp.add_argument("--start-z", type=_floats(3), default=None, help="start at (0, z0) instead of the origin")
    sp.add_argument("--n-max", type=_positive_int(1), default=3)
    sp.add_argument("--tol", type=float, default=1e-9)
    common(sp)

    sp = sub.add_parser("mu", help="tabulate mu(t) = f(t)/g(t)")
    sp.add_argument("--from", dest="t_from", type=float, default=0.0)
    sp.add_argument("--to", dest="t_to", type=float, default=30.0)
    sp.add_argument("--samples", type=_positive_int(2), default=301)
    common(sp)

    sp = sub.add_parser("roots", help="roots of tan(t/2) = tanh(t/2) and the maxima of mu")
    sp.add_argument("--k-max", type=_positive_int(1), default=5)
    common(sp)

    sp = sub.add_parser("em", help="electromagnetic field report for theta")
    sp.add_argument("--theta", type=_floats(3), required=True)
    sp.add_argument("--phase", type=float, default=0.0)
    common(sp)

    sp = sub.add_parser("oracle", help="compare the closed form with the Hamiltonian integrator")
    sp.add_argument("--theta", type=_floats(3), required=True)
    sp.add_argument("--v0", type=_floats(4), required=True)
    sp.add_argument("--steps", type=_positive_int(1), default=10_000)
    sp.add_argument("--samples", type=_positive_int(2), default=101)
    common(sp)

    sp = sub.add_parser("heis", help="Lorentzian Heisenberg group: connect the origin to (x, y, z)")
    sp.add_argument("--point", type=_floats(3), required=True)
    sp.add_argument("--samples", type=_positive_int(2), default=None,
                    help="also emit this many trajectory samples")
    sp.add_argument("--tol", type=float, default=1e-12)
    common(sp)
    return p


def _resolve_format(args):
    if args.format:
        return args.format
    env = os.environ.get(FORMAT_ENV, "").strip().lower()
    if env in ("csv", "json"):
        return env
    return _NATURAL_FORMAT[args.command]


def _cell(c):
    if isinstance(c, str):
        return c
    if isinstance(c, (bool, np.bool_)):
        return "true" if c else "false"
    return fmt_float(c)


def _csv(header, rows):
    lines = [] if header is None else [header]
    lines.extend(",".join(_cell(c) for c in r) for r in rows)
    return "\n".join(lines) + "\n"


def _json(payload):
    return to_json({"schema_version": SCHEMA_VERSION, **payload}) + "\n"


def cmd_shoot(args, fmt):
    params = ge.make_params(args.theta, args.v0, args.phase)
    ts = np.linspace(0.0, args.t_end, args.samples)
    rows = []
    for t in ts:
        s = ge.eval(params, t, rates=False)
        x = s.x_original if args.frame == "original" else s.x_canonical
        rows.append([t, *x, *s.z, causal_classify(s.velocity_canonical).kind.value])
    if fmt == "csv":
        return _csv(CSV_HEADER, rows)
    return _json({
        "command": "shoot", "theta": args.theta, "v0": args.v0, "phase": args.phase, "frame": args.frame,
        "columns": CSV_HEADER.split(","), "rows": rows,
    })


def cmd_connect(args, fmt):
    q = rc.EndpointQuery(args.endpoint[:4], args.endpoint[4:], args.n_max, args.start_z)
    rep = rc.connect(q, args.tol)
    if fmt == "csv":
        header = "family_index,theta1,theta2,theta3,phase,v00,v01,v02,v03,causal,length,hit_error"
        rows = [[g.family_index, *g.params.theta, g.params.phase, *g.params.v0, g.causal.kind.value,
                 float("nan") if g.length is None else g.length, g.hit_error] for g in rep.geodesics]
        text = _csv(header, rows)
        return f"# classification={rep.classification.value}\n" + text
    return _json({"command": "connect", "endpoint": args.endpoint, **rep.to_dict()})


def cmd_mu(args, fmt):
    if args.t_from < 0 or args.t_to <= args.t_from:
        raise DomainError("need 0 <= --from < --to")
    ts = np.linspace(args.t_from, args.t_to, args.samples)
    rows = [[t, rc.mu(t)] for t in ts]
    if fmt == "csv":
        return _csv("theta,mu", rows)
    return _json({"command": "mu", "columns": ["theta", "mu"], "rows": rows})


def cmd_roots(args, fmt):
    roots = rc.theta_k_roots(args.k_max)
    maxima = rc.mu_maxima(args.k_max)
    rows = [[r.interval_index, r.value, rc.mu(r.value), m, a] for r, (m, a) in zip(roots, maxima)]
    if fmt == "csv":
        return _csv("k,theta_k,mu_at_theta_k,m_prev_interval,argmax_prev_interval", rows)
    return _json({
        "command": "roots",
        "theta_k": [r.to_dict() for r in roots],
        "mu_maxima": [{"interval_index": k, "m": m, "argmax": a} for k, (m, a) in enumerate(maxima)],
        "m0_upper_bound": rc.m0_upper_bound(),
    })


def cmd_em(args, fmt):
    fv = em.field_from_theta(args.theta)
    obs = em.energy_observables(fv)
    inv = em.lorentz_invariants(fv)
    fr = em.canonical_frame(args.theta, args.phase)
    payload = {
        "command": "em", "theta": args.theta,
        "E": fv.E, "B": fv.B,
        "invariants": {"B2_minus_E2": inv[0], "E_dot_B": inv[1]},
        "regular": em.is_regular(fv),
        "energy_density": obs.density, "poynting": obs.poynting, "stress": obs.stress, "T": obs.T,
        "A": em.em_tensor(fv).A,
        "P": fr.P, "curlyP": fr.curlyP, "eps": fr.eps, "delta": fr.delta,
    }
    if fmt == "csv":
        # one row per quantity: name followed by its entries in row-major order
        flat = {k: v for k, v in payload.items() if k != "command"}
        flat["invariants"] = list(flat["invariants"].values())
        return _csv(None, [[k, *np.ravel(v)] for k, v in flat.items()])
    return _json(payload)


def cmd_oracle(args, fmt):
    params = ge.make_params(args.theta, args.v0)
    devs, trajs = ho.compare_batch([params], 1.0, args.steps, args.samples)
    payload = {
        "command": "oracle", "theta": args.theta, "v0": args.v0, "steps": args.steps,
        "backend": ho.kernels.BACKEND,
        "max_deviation": float(devs[0]),
        "energy_drift": ho.energy_drift(trajs[0]),
        "horizontality_residual": ho.horizontality_residual(trajs[0]),
    }
    if fmt == "csv":
        keys = ["max_deviation", "energy_drift", "horizontality_residual"]
        return _csv(",".join(keys), [[payload[k] for k in keys]])
    return _json(payload)


def cmd_heis(args, fmt):
    p = hz.HPoint(*args.point)
    c = hz.h_connect(p, args.tol)
    samples = []
    if args.samples and c.kind is not hz.HKind.NO_GEODESIC:
        for t in np.linspace(0.0, 1.0, args.samples):
            q = c.at(t)
            samples.append([t, q.x, q.y, q.z])
    if fmt == "csv":
        return f"# kind={c.kind.value} region={c.region.value}\n" + _csv("t,x,y,z", samples)
    return _json({"command": "heis", **c.to_dict(), "samples": samples})


_COMMANDS = {
    "shoot": cmd_shoot, "connect": cmd_connect, "mu": cmd_mu, "roots": cmd_roots,
    "em": cmd_em, "oracle": cmd_oracle, "heis": cmd_heis,
}


def run(argv=None):
    args = build_parser().parse_args(argv)
    fmt = _resolve_format(args)
    try:
        text = _COMMANDS[args.command](args, fmt)
    except DomainError as exc:
        print(f"sublorentz: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    try:
        if args.output == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"sublorentz: cannot write output: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
