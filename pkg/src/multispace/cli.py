"""Command-line front end.

Every subcommand writes either CSV or ``key=value`` report lines, to stdout or
``--output``. Numbers use 12 significant digits so that reruns are
byte-identical. Exit codes: 0 ok, 1 bad arguments, 2 domain error raised
while computing.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import cosmology, graphphase, multicosmos, pseudoface, relativity
from .errors import MultispaceError

PAPER_EXPANSION_FACTOR = 3.04
EXPANSION_BAND = (2.5, 3.5)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x) + 0.0  # folds -0.0 into 0.0
    return format(x, ".12g")


def _round(x):
    """JSON-safe value carrying the same 12 significant digits as CSV output."""
    if isinstance(x, float):
        return float(fmt(x))
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    return x


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _report(pairs) -> str:
    return "".join(f"{k}={v if isinstance(v, str) else fmt(v)}\n" for k, v in pairs)


def _require(cond, message):
    if not cond:
        raise UsageError(message)


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


# --------------------------------------------------------------------------
# subcommands


def cmd_pseudo_shape(a):
    _require(a.R > 0 and a.sigma > 0, "--R and --sigma must be positive")
    _require(a.samples >= 3, "--samples must be >= 3")
    slices = pseudoface.ball_profile_scaled(a.R, a.sigma, a.samples, a.paper_figure_mode)
    return _csv(["t", "radius"], [(s.t, s.radius) for s in slices])


def cmd_angle_shape(a):
    _require(a.R > 0, "--R must be positive")
    _require(a.samples >= 2, "--samples must be >= 2")
    rows = []
    for t in np.linspace(-a.R, a.R, a.samples):
        s = pseudoface.ball_pseudo_shape_angle(a.R, float(t))
        rows.append((s.t, s.radius))
    return _csv(["t", "radius"], rows)


def _read_events(a):
    events = [tuple(e) for e in a.event or []]
    if a.input:
        with open(a.input, newline="") as fh:
            for n, row in enumerate(csv.DictReader(fh), start=2):
                try:
                    events.append(tuple(float(row[k]) for k in ("x", "y", "z", "t")))
                except (KeyError, TypeError, ValueError) as exc:
                    raise UsageError(f"{a.input}:{n}: need numeric columns x,y,z,t") from exc
    return events


def cmd_lorentz(a):
    _require(a.c > 0, "--c must be positive")
    _require(abs(a.v) < a.c, "--v must satisfy |v| < c")
    events = _read_events(a)
    _require(events, "give at least one --event or an --input file")
    _require(all(len(e) == 4 for e in events), "events need four components x,y,z,t")
    boosted = relativity.lorentz_boost(np.array(events), relativity.BoostParams(a.v, a.c))
    return _csv(["x", "y", "z", "t", "x2", "y2", "z2", "t2"], [tuple(e) + tuple(b) for e, b in zip(events, boosted)])


def cmd_velocity_add(a):
    _require(a.c > 0, "--c must be positive")
    _require(abs(a.v) < a.c, "--v must satisfy |v| < c")
    u = np.array([a.ux, a.uy, a.uz])
    _require(np.linalg.norm(u) <= a.c * (1 + 1e-12), "|u| must not exceed c")
    out = relativity.velocity_transform(u, relativity.BoostParams(a.v, a.c))
    return _csv(["ux", "uy", "uz", "ux2", "uy2", "uz2"], [tuple(u) + tuple(out)])


def _scale_law(law: str, a0: float, rate: float):
    if law == "power":
        return lambda t: a0 * t**rate
    return lambda t: a0 * math.exp(rate * t)


def cmd_friedmann(a):
    _require(a.c > 0, "--c must be positive")
    _require(a.a0 > 0, "--a0 must be positive")
    params = relativity.FriedmannParams(a.K, _scale_law(a.law, a.a0, a.rate), a.c)
    coords = (a.t, a.r, a.theta, a.phi)
    d = (a.dt, a.dr, a.dtheta, a.dphi)
    ds2 = relativity.friedmann_interval_sq(params, coords, d)
    return _report(
        [("K", a.K), ("c", a.c), ("law", a.law), ("a0", a.a0), ("rate", a.rate)]
        + list(zip(("t", "r", "theta", "phi"), coords))
        + list(zip(("dt", "dr", "dtheta", "dphi"), d))
        + [("a", params.a(a.t)), ("ds2", ds2)]
    )


def cmd_classify(a):
    _require(a.a0 > 0, "--a0 must be positive")
    _require(a.h is None or a.h > 0, "--h must be positive")
    _require(a.zero_band >= 0, "--zero-band must be non-negative")
    law = _scale_law(a.law, a.a0, a.rate)
    rate = relativity.scale_derivative(law, a.t, a.h)
    kind = relativity.classify_cosmos(law, a.t, a.h, a.zero_band)
    return _report(
        [("law", a.law), ("a0", a.a0), ("rate", a.rate), ("t", a.t), ("da_dt", rate), ("class", str(kind))]
    )


def cmd_kasner(a):
    _require(a.m >= 1, "--m must be >= 1")
    sol = cosmology.kasner_exponents(a.m, a.branch)
    mu_p, nu_p = cosmology.kasner_exponents_printed(a.m, a.branch)
    lin, quad = sol.linear_residual, sol.quadratic_residual
    ok = abs(lin) <= 1e-12 and abs(quad) <= 1e-12
    return _report(
        [
            ("m", sol.m),
            ("branch", sol.branch),
            ("mu", sol.mu),
            ("nu", sol.nu),
            ("residual_linear", lin),
            ("residual_quadratic", quad),
            ("sum_rules", "PASS" if ok else "FAIL"),
            ("printed_nu", nu_p),
            ("printed_residual_linear", 3 * mu_p + a.m * nu_p - 1),
            ("printed_residual_quadratic", 3 * mu_p**2 + a.m * nu_p**2 - 1),
        ]
    )


def cmd_time_shift(a):
    _require(a.samples >= 2, "--samples must be >= 2")
    _require(a.t_start < a.t_end < a.t_inf, "need t-start < t-end < t-inf")
    if a.mu is None:
        _require(a.m >= 1, "--m must be >= 1")
        mu = cosmology.kasner_exponents(a.m, a.branch).mu
    else:
        mu = a.mu
    t = np.linspace(a.t_start, a.t_end, a.samples)
    s, ds, dds = cosmology.time_shift_scale(mu, a.t_inf, t)
    return _csv(["t", "a", "da_dt", "d2a_dt2"], zip(t, s, ds, dds))


def _tw_config(a):
    _require(a.m >= 2, "--m must be >= 2")
    _require(a.lambda0 > 0 and a.rc > 0, "--lambda0 and --rc must be positive")
    return cosmology.TWCosmology(a.m, a.lambda0, a.rc, a.t1, a.kind)


def cmd_tw_state(a):
    cfg = _tw_config(a)
    _require(a.samples >= 2, "--samples must be >= 2")
    _require(a.t_start < a.t_end, "need t-start < t-end")
    rows = []
    for t in np.linspace(a.t_start, a.t_end, a.samples):
        st = cosmology.tw_state(cfg, float(t))
        rows.append((st.t, st.K, st.phi, st.S))
    return _csv(["t", "K", "phi", "S"], rows)


def cmd_tw_window(a):
    cfg = _tw_config(a)
    _require(a.resolution >= 1000, "--resolution must be >= 1000")
    w = cosmology.tw_acceleration_window(cfg, a.resolution)
    lo, hi = EXPANSION_BAND
    ok = lo <= w.expansion_factor <= hi
    return _report(
        [
            ("m", cfg.m),
            ("lambda0", cfg.lambda0),
            ("rc", cfg.r_c),
            ("t1", cfg.t1),
            ("kind", cfg.kind),
            ("t_enter", w.t_enter),
            ("t_exit", w.t_exit),
            ("proper_time_span", cosmology.proper_time(cfg, w.t_enter, w.t_exit)),
            ("expansion_factor", w.expansion_factor),
            ("definition", w.definition),
            ("reference_value", PAPER_EXPANSION_FACTOR),
            ("band", f"[{fmt(lo)}, {fmt(hi)}]"),
            ("band_check", "PASS" if ok else "FAIL"),
        ]
    )


def load_graph(path) -> graphphase.GraphPhase:
    data = json.loads(Path(path).read_text())
    try:
        branes = [(b["id"], b["omega"]) for b in data["branes"]]
        inter = [(i["a"], i["b"], i["lambda"]) for i in data.get("interactions", [])]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"graph file is missing a field: {exc}") from exc
    return graphphase.build_graph_phase(branes, inter)


def dump_graph(phase: graphphase.GraphPhase) -> dict:
    return {
        "branes": [{"id": v, "omega": _round(list(phase.omega[v]))} for v in phase.vertices],
        "interactions": [
            {"a": a, "b": b, "lambda": _round(list(phase.Lambda[frozenset((a, b))]))} for a, b in phase.edge_list()
        ],
    }


def cmd_graph_transform(a):
    _require(a.input, "--input graph file is required")
    _require(a.n >= 1, "--n must be >= 1")
    phase = load_graph(a.input)
    tau = graphphase.LabelTransform.affine(a.omega_scale, a.omega_shift, a.lambda_scale, a.lambda_shift)
    verdict = graphphase.is_embeddable(phase, a.n)
    out = graphphase.transform_phase(phase, tau, a.n)
    doc = {"n": a.n, "embeddable": verdict.embeddable, "phase": dump_graph(out)}
    if verdict.witness is not None:
        doc["rotation_system"] = {str(v): [str(w) for w in ws] for v, ws in verdict.witness.items()}
        doc["euler"] = graphphase.euler_characteristics(verdict.witness)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def cmd_cosmos_check(a):
    _require(a.input, "--input model file is required")
    _require(a.trials >= 0, "--trials must be >= 0")
    model = multicosmos.MultiCosmosModel.from_json(Path(a.input).read_text())
    top = a.top
    if top is None:
        tops = [i for i in model.subcosmoses if model.is_maximal(i)]
        _require(len(tops) == 1, f"model has {len(tops)} maximal sub-cosmoses; pick one with --top")
        top = tops[0]
    rep = multicosmos.validate_sheaf_conditions(model, top, a.trials, a.seed)

    def verdict(r):
        return "SKIPPED" if r.skipped else ("PASS" if r.passed else "FAIL")

    lines = [
        ("top", str(top)),
        ("subcosmoses", len(model.subcosmoses)),
        ("trials", a.trials),
        ("seed", a.seed),
        ("composition", verdict(rep.composition)),
        ("separated", verdict(rep.separated)),
        ("gluing", verdict(rep.gluing)),
        ("families_glued", sum(1 for _, f in rep.families if f is not None)),
    ]
    for (chain, x) in rep.composition.violations:
        lines.append(("composition_violation", f"{'>'.join(map(str, chain))}@{x}"))
    for g, h in rep.separated.violations:
        lines.append(("separated_violation", f"{g}|{h}"))
    for fam in rep.gluing.violations:
        lines.append(("gluing_violation", json.dumps(fam, sort_keys=True)))
    if model.operations:
        lines.append(("homomorphisms", verdict(multicosmos.validate_homomorphisms(model))))
    lines.append(("overall", "PASS" if rep.passed else "FAIL"))
    return _report(lines)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="multispace", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--output", "-o", help="write here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    sp = add("pseudo-shape", cmd_pseudo_shape, "slice radii of a ball under the scaling deformation")
    sp.add_argument("--R", type=float, default=1.0)
    sp.add_argument("--sigma", type=float, default=0.5)
    sp.add_argument("--samples", type=int, default=41)
    sp.add_argument("--paper-figure-mode", action="store_true", help="plain sqrt(R^2 - t^2) profile")

    sp = add("angle-shape", cmd_angle_shape, "slice radii of a ball under the angle deformation")
    sp.add_argument("--R", type=float, default=1.0)
    sp.add_argument("--samples", type=int, default=41)

    sp = add("lorentz", cmd_lorentz, "boost events along x")
    sp.add_argument("--v", type=float, required=True)
    sp.add_argument("--c", type=float, default=1.0)
    sp.add_argument("--event", type=_floats, action="append", help="x,y,z,t (repeatable)")
    sp.add_argument("--input", help="CSV with columns x,y,z,t")

    sp = add("velocity-add", cmd_velocity_add, "velocity seen from a boosted frame")
    sp.add_argument("--ux", type=float, required=True)
    sp.add_argument("--uy", type=float, default=0.0)
    sp.add_argument("--uz", type=float, default=0.0)
    sp.add_argument("--v", type=float, required=True)
    sp.add_argument("--c", type=float, default=1.0)

    def scale_flags(sp):
        sp.add_argument("--law", choices=("power", "exp"), default="power", help="a0*t^rate or a0*exp(rate*t)")
        sp.add_argument("--a0", type=float, default=1.0)
        sp.add_argument("--rate", type=float, default=0.0)

    sp = add("friedmann", cmd_friedmann, "Friedmann line element")
    sp.add_argument("--K", type=float, default=0.0)
    sp.add_argument("--c", type=float, default=1.0)
    scale_flags(sp)
    for name, default in (("t", 1.0), ("r", 1.0), ("theta", math.pi / 2), ("phi", 0.0)):
        sp.add_argument(f"--{name}", type=float, default=default)
    for name in ("dt", "dr", "dtheta", "dphi"):
        sp.add_argument(f"--{name}", type=float, default=0.0)

    sp = add("classify", cmd_classify, "static / contracting / expanding")
    scale_flags(sp)
    sp.add_argument("--t", type=float, default=1.0)
    sp.add_argument("--h", type=float, default=None)
    sp.add_argument("--zero-band", type=float, default=1e-7)

    sp = add("kasner", cmd_kasner, "vacuum Kasner exponents")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--branch", choices=("plus", "minus"), default="plus")

    sp = add("time-shift", cmd_time_shift, "time-shifted Kasner scale factor")
    sp.add_argument("--m", type=int, default=7)
    sp.add_argument("--branch", choices=("plus", "minus"), default="minus")
    sp.add_argument("--mu", type=float, default=None, help="override the Kasner exponent")
    sp.add_argument("--t-inf", type=float, default=10.0)
    sp.add_argument("--t-start", type=float, default=0.0)
    sp.add_argument("--t-end", type=float, default=9.0)
    sp.add_argument("--samples", type=int, default=10)

    def tw_flags(sp):
        sp.add_argument("--m", type=int, default=7)
        sp.add_argument("--lambda0", type=float, default=1.0)
        sp.add_argument("--rc", type=float, default=1.0)
        sp.add_argument("--t1", type=float, default=0.0)
        sp.add_argument("--kind", choices=("sinh", "sin"), default="sinh")

    sp = add("tw-state", cmd_tw_state, "Townsend-Wohlfarth state sweep")
    tw_flags(sp)
    sp.add_argument("--t-start", type=float, default=-1.5)
    sp.add_argument("--t-end", type=float, default=-0.05)
    sp.add_argument("--samples", type=int, default=30)

    sp = add("tw-window", cmd_tw_window, "acceleration window and expansion factor")
    tw_flags(sp)
    sp.add_argument("--resolution", type=int, default=100_000)

    sp = add("graph-transform", cmd_graph_transform, "embed-gated affine label transform of a graph phase")
    sp.add_argument("--input", required=True)
    sp.add_argument("--n", type=int, default=2)
    sp.add_argument("--omega-scale", type=float, default=1.0)
    sp.add_argument("--omega-shift", type=float, default=0.0)
    sp.add_argument("--lambda-scale", type=float, default=1.0)
    sp.add_argument("--lambda-shift", type=float, default=0.0)

    sp = add("cosmos-check", cmd_cosmos_check, "sheaf conditions of a multi-cosmos model")
    sp.add_argument("--input", required=True)
    sp.add_argument("--top", default=None)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    return p


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        for name in ("R", "sigma", "c", "v", "lambda0", "rc", "t1", "a0", "rate", "K"):
            val = getattr(args, name, None)
            _require(val is None or math.isfinite(val), f"--{name} must be finite")
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    try:
        text = args.func(args)
    except (UsageError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except MultispaceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 2
    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    return 0


def main():  # pragma: no cover
    sys.exit(run_cli())


if __name__ == "__main__":  # pragma: no cover
    main()
