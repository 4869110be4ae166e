"""Command-line front end: ``qig metric | validate | tomo | gaussian``.

Data goes to stdout (JSON with ``"schema": "qig/1"``, or CSV for
``validate``); diagnostics go to stderr.  Exit codes: 0 success, 1 physical
constraint violated, 2 bad input or domain error, 3 validation tolerance
breached.
"""

import argparse
import csv
import json
import sys

import numpy as np

from . import charts, divergences, gaussian, geometry, metrics, oracle, spin_tomography
from .errors import NotAState, QIGError
from .hermitian import random_density

SCHEMA = "qig/1"
VALIDATE_HEADER = ("q", "point", "component", "closed", "oracle", "rel_err")

EXIT_OK, EXIT_PHYSICAL, EXIT_INPUT, EXIT_TOLERANCE = 0, 1, 2, 3


class PhysicalViolation(Exception):
    pass


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _emit(payload):
    payload = dict(payload, schema=SCHEMA)
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _scheme(args):
    base = oracle.FDScheme.from_env()
    order = getattr(args, "order", None)
    if order is None:
        return base
    return oracle.FDScheme(base.h2, base.h3, base.hc, order)


def _tsallis(q):
    return divergences.make_divergence(divergences.DivergenceKind.QUANTUM_TSALLIS_RESCALED, q)


# --- metric ------------------------------------------------------------------

def cmd_metric(args):
    if args.system == "qubit":
        if args.w is None:
            raise ValueError("--w is required for --system qubit")
        m = metrics.qubit_metric(args.q, args.w)
        out = {"system": "qubit", "w": args.w}
        if args.oracle:
            fd, asym = oracle.metric_fd(_tsallis(args.q), charts.qubit_exp_chart(),
                                        [args.w, 0.0, 0.0, 0.0], _scheme(args))
            out["oracle"] = fd.to_dict()
            out["oracle"]["asymmetry"] = asym
    elif args.system == "qutrit":
        k = np.array(_floats(args.k or ""))
        m = metrics.qutrit_metric(args.q, k)
        c12, c13, c23 = metrics.qutrit_tangent_coefficients(k, args.q)
        out = {"system": "qutrit", "k": k.tolist(), "coefficients": {"c12": c12, "c13": c13, "c23": c23}}
        if args.oracle:
            x = np.concatenate([k[:2], np.zeros(8)])
            fd, asym = oracle.metric_fd(_tsallis(args.q), charts.qutrit_exp_chart(), x, _scheme(args))
            out["oracle"] = fd.to_dict()
            out["oracle"]["asymmetry"] = asym
    else:
        k = np.array(_floats(args.k or ""))
        m = metrics.fisher_rao_simplex(k)
        out = {"system": "simplex", "k": k.tolist()}
    out.update(m.to_dict())
    _emit(out)
    return EXIT_OK


# --- validate ----------------------------------------------------------------

def _rel(closed, fd):
    scale = abs(closed)
    return abs(fd - closed) / scale if scale > 0 else abs(fd - closed)


def _validate_qubit_metric(args, scheme):
    chart = charts.qubit_exp_chart()
    for q in args.q:
        for w in args.w:
            closed = metrics.qubit_metric(q, w)
            fd, _ = oracle.metric_fd(_tsallis(q), chart, [w, 0.0, 0.0, 0.0], scheme)
            for i, lab in enumerate(closed.coframe_labels[:3]):
                a, b = closed[i, i], fd[i, i]
                yield q, f"w={w:g}", f"g[{lab},{lab}]", a, b, _rel(a, b)


CONNECTION_ENTRIES = ((0, 0, 0), (0, 1, 1), (0, 2, 2), (1, 0, 1), (2, 0, 2), (1, 2, 2), (2, 1, 2))


def _validate_connection(args, scheme):
    chart = charts.qubit_polar_chart()
    thetas = args.theta or [1.1]
    for q in args.q:
        for w in args.w:
            for th in thetas:
                for which in ("primal", "dual"):
                    closed = geometry.polar_connection(q, w, th, which)
                    fd = oracle.connection_fd(_tsallis(q), chart, [w, th, 0.3], scheme, which).values
                    star = "*" if which == "dual" else ""
                    for idx in CONNECTION_ENTRIES:
                        lab = "G%s_%d%d%d" % ((star,) + tuple(i + 1 for i in idx))
                        yield q, f"w={w:g};theta={th:g}", lab, closed[idx], fd[idx], _rel(closed[idx], fd[idx])


def _validate_curvature(args, scheme):
    chart = charts.qubit_polar_chart()
    th = (args.theta or [1.1])[0]
    for q in args.q:
        limit = "half" if abs(q - 0.5) < 1e-12 else "q1" if abs(q - 1.0) < 1e-8 else None
        for w in args.w:
            fd = oracle.curvature_fd(_tsallis(q), chart, [w, th, 0.3], scheme).scalar
            if limit is None:
                closed = geometry.polar_curvature(q, w, th).scalar
            else:
                closed = geometry.scalar_curvature_limits(w, limit)
            yield q, f"w={w:g};theta={th:g}", "scalar", closed, fd, _rel(closed, fd)


def cmd_validate(args):
    scheme = _scheme(args)
    runner = {"qubit-metric": _validate_qubit_metric, "connection": _validate_connection,
              "curvature": _validate_curvature}[args.target]
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(VALIDATE_HEADER)
    worst = 0.0
    for q, point, comp, closed, fd, rel in runner(args, scheme):
        worst = max(worst, rel)
        writer.writerow([repr(float(q)), point, comp, repr(float(closed)), repr(float(fd)), "%.3e" % rel])
    if worst > args.threshold:
        print(f"tolerance breached: max rel_err {worst:.3e} > {args.threshold:g}", file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


# --- tomo --------------------------------------------------------------------

def _qubit_from_args(args):
    return charts.bloch_state(_floats(args.bloch))


def cmd_tomo(args):
    if args.action == "forward":
        if args.system == "qubit":
            t = spin_tomography.qubit_tomogram(_qubit_from_args(args))
        else:
            rho = charts.qutrit_state(_floats(args.spectrum), _floats(args.t) if args.t else np.zeros(8))
            t = spin_tomography.qutrit_tomogram(rho)
        _emit(json.loads(t.to_json()))
    elif args.action == "invert":
        if args.tomogram:
            with open(args.tomogram) as fh:
                t = spin_tomography.Tomogram.from_json(fh.read())
        else:
            w = np.array(_floats(args.w))
            t = spin_tomography.Tomogram(np.column_stack([w, 1.0 - w]))
        try:
            if t.probabilities.shape[1] == 2:
                rho = spin_tomography.qubit_reconstruct(t)
            else:
                rho = spin_tomography.qutrit_reconstruct(t)
        except NotAState as exc:
            raise PhysicalViolation(str(exc)) from None
        _emit({"rho_real": np.real(rho).tolist(), "rho_imag": np.imag(rho).tolist()})
    elif args.action == "metric":
        rho = _qubit_from_args(args)
        frame = {f.label: f for f in spin_tomography.canonical_qubit_quorum().frames}[args.frame]
        m = spin_tomography.qubit_tomographic_metric(rho, frame)
        _emit(dict(m.to_dict(), frame=args.frame))
    elif args.action == "check":
        res = spin_tomography.uncertainty_check(args.w1, args.w2, args.w3)
        _emit(res)
        if not res["holds"]:
            print(f"uncertainty relation violated: lhs = {res['lhs']:.6g} > 0.25", file=sys.stderr)
            return EXIT_PHYSICAL
    elif args.action == "roundtrip":
        rng = np.random.default_rng(args.seed)
        n = 2 if args.system == "qubit" else 3
        rho = random_density(n, rng)
        if n == 2:
            back = spin_tomography.qubit_reconstruct(spin_tomography.qubit_tomogram(rho))
        else:
            back = spin_tomography.qutrit_reconstruct(spin_tomography.qutrit_tomogram(rho))
        err = float(np.max(np.abs(back - rho)) / np.max(np.abs(rho)))
        _emit({"system": args.system, "seed": args.seed, "rel_err": err})
    return EXIT_OK


# --- gaussian ----------------------------------------------------------------

def _state(text):
    return gaussian.GaussianState.from_vector(_floats(text))


def _frame(text):
    mu, nu = _floats(text)
    return gaussian.SymplecticFrame(mu, nu)


def cmd_gaussian(args):
    if args.action == "tomogram":
        xbar, var = gaussian.gaussian_tomogram_params(_state(args.state), _frame(args.frame))
        _emit({"xbar": xbar, "sigma": var})
    elif args.action == "divergence":
        s, s2, f = _state(args.state), _state(args.state2), _frame(args.frame)
        val = gaussian.gaussian_tsallis(s, s2, f, args.q, args.b_sign)
        _emit({"q": args.q, "divergence": val, "b_sign": args.b_sign})
    elif args.action == "admissibility":
        _emit(gaussian.admissibility(_state(args.state)))
    elif args.action == "metric":
        m = gaussian.symplectic_metric(_state(args.state), _frame(args.frame), args.q, _scheme(args))
        _emit(m.to_dict())
    return EXIT_OK


# --- parser ------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="qig", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("metric", help="closed-form metric at a point")
    m.add_argument("--system", choices=("qubit", "qutrit", "simplex"), required=True)
    m.add_argument("--q", type=float, default=0.5)
    m.add_argument("--w", type=float)
    m.add_argument("--k", help="comma-separated spectrum / probability vector")
    m.add_argument("--oracle", action="store_true", help="also report the finite-difference metric")
    m.add_argument("--order", type=int, choices=(2, 4))
    m.set_defaults(func=cmd_metric)

    v = sub.add_parser("validate", help="closed form vs oracle sweep, CSV output")
    v.add_argument("--target", choices=("qubit-metric", "connection", "curvature"), default="qubit-metric")
    v.add_argument("--q", type=_floats, default=[0.25, 0.5, 0.75, 0.9])
    v.add_argument("--w", type=_floats, default=[round(0.1 * j, 1) for j in range(1, 10)])
    v.add_argument("--theta", type=_floats)
    v.add_argument("--threshold", type=float, default=1e-5)
    v.add_argument("--order", type=int, choices=(2, 4), default=4)
    v.set_defaults(func=cmd_validate)

    t = sub.add_parser("tomo", help="spin tomography")
    t.add_argument("action", choices=("forward", "invert", "metric", "check", "roundtrip"))
    t.add_argument("--system", choices=("qubit", "qutrit"), default="qubit")
    t.add_argument("--bloch", default="0,0,0", help="qubit Bloch vector y1,y2,y3")
    t.add_argument("--spectrum", default="0.3333333333333333,0.3333333333333333,0.3333333333333334")
    t.add_argument("--t", help="qutrit group coordinates t1..t8")
    t.add_argument("--w", default="0.5,0.5,0.5", help="qubit probabilities W_1,W_2,W_3")
    t.add_argument("--tomogram", help="tomogram JSON file")
    t.add_argument("--frame", choices=("x", "y", "z"), default="z")
    t.add_argument("--w1", type=float, default=0.5)
    t.add_argument("--w2", type=float, default=0.5)
    t.add_argument("--w3", type=float, default=0.5)
    t.add_argument("--seed", type=int, default=0)
    t.set_defaults(func=cmd_tomo)

    g = sub.add_parser("gaussian", help="Gaussian symplectic tomograms")
    g.add_argument("action", choices=("tomogram", "divergence", "admissibility", "metric"))
    g.add_argument("--state", default="0.5,0.5,0,0,0", help="sqq,spp,sqp,qmean,pmean")
    g.add_argument("--state2", default="0.5,0.5,0,0,0")
    g.add_argument("--frame", default="1,0", help="mu,nu")
    g.add_argument("--q", type=float, default=0.5)
    g.add_argument("--b-sign", type=int, choices=(1, -1), default=1)
    g.add_argument("--order", type=int, choices=(2, 4))
    g.set_defaults(func=cmd_gaussian)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PhysicalViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICAL
    except (QIGError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
