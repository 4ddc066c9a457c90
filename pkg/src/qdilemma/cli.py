"""Command-line front end.

Subcommands: ``play`` a single profile, tabulate ``classes``, ``sweep`` a
parameter, query the ``xc`` crossing point, and run ``tomo`` tasks.  Results
are emitted as JSON (full precision) or CSV (12 significant digits), to
stdout or atomically to ``--output``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
import tempfile
from dataclasses import asdict

import numpy as np

from . import analysis, game, linalg, noise, tomography
from .game import PayoffTable

_PROFILE_RE = re.compile(r"[IHXihx]{3}")
_BITS_RE = re.compile(r"[01]{3}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=float, default=1.0, help="lone-player payoff (default 1)")
    common.add_argument("--q", type=float, default=2.0, help="all-go payoff (default 2)")
    common.add_argument("--n", type=float, default=9.0, help="win/loss magnitude (default 9)")
    common.add_argument("--x", type=float, default=0.0, help="source corruption in [0,1] (default 0)")
    common.add_argument("--gamma", type=float, default=math.pi / 2,
                        help="entanglement strength in [0, pi/2] (default pi/2)")
    common.add_argument("--shots", type=int, default=8192, help="shots for estimation (default 8192)")
    common.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    common.add_argument("--grid", type=int, default=101, help="sweep grid points (default 101)")
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt",
                        help="output format (default json)")
    common.add_argument("--output", default=None, metavar="PATH",
                        help="write to PATH (atomically) instead of stdout")

    parser = argparse.ArgumentParser(
        prog="qdilemma",
        description="Noisy three-player quantum dilemma game: simulation and analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_play = sub.add_parser("play", parents=[common], help="play one strategy profile")
    p_play.add_argument("profile", help="three letters from I/H/X, e.g. XIX (player 1 first)")
    p_play.set_defaults(handler=cmd_play)

    p_classes = sub.add_parser("classes", parents=[common], help="tabulate the ten strategy classes")
    p_classes.set_defaults(handler=cmd_classes)

    p_sweep = sub.add_parser("sweep", parents=[common], help="sweep x, n, or q")
    p_sweep.add_argument("swept", choices=analysis.SWEEPABLE)
    p_sweep.add_argument("--from", dest="start", type=float, default=None,
                         help="range start (default 0 for x)")
    p_sweep.add_argument("--to", dest="stop", type=float, default=None,
                         help="range end (default 1 for x)")
    p_sweep.set_defaults(handler=cmd_sweep)

    p_xc = sub.add_parser("xc", parents=[common], help="critical corruption and dominance verdict")
    p_xc.set_defaults(handler=cmd_xc)

    p_tomo = sub.add_parser("tomo", parents=[common], help="tomography tasks")
    p_tomo.add_argument("task", choices=("forward", "reconstruct", "fidelity", "estimate"))
    p_tomo.add_argument("inputs", nargs="+", metavar="INPUT",
                        help="profile (XIX), bundled state name, or file path; "
                             "fidelity takes STATE TARGET, with TARGET also accepting bits like 101")
    p_tomo.set_defaults(handler=cmd_tomo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = args.handler(args)
        emit(payload, args)
    except (ValueError, KeyError, OSError) as exc:
        message = exc.args[0] if exc.args else exc
        print(f"error: {message}", file=sys.stderr)
        return 2
    return 0


def _params(args, **extra) -> dict:
    params = {
        "command": args.command,
        "p": args.p,
        "q": args.q,
        "n": args.n,
        "x": args.x,
        "gamma": args.gamma,
        "shots": args.shots,
        "seed": args.seed,
        "grid": args.grid,
    }
    params.update(extra)
    return params


def _param_columns(args):
    return ["p", "q", "n", "x", "gamma", "seed"], [args.p, args.q, args.n, args.x, args.gamma, args.seed]


def _table(args) -> PayoffTable:
    return PayoffTable(args.p, args.q, args.n)


def cmd_play(args) -> dict:
    profile = game.parse_profile(args.profile)
    table = _table(args)
    probs = game.play(profile, noise.corrupted_input(args.x), args.gamma)
    pay = game.payoff(probs, table)
    results = {
        "profile": args.profile.upper(),
        "probabilities": {name: probs[k] for k, name in enumerate(game.OUTCOMES)},
        "payoffs": {
            "player1": pay.player1,
            "player2": pay.player2,
            "player3": pay.player3,
            "mean": pay.mean,
        },
    }
    names, values = _param_columns(args)
    header = names + ["profile"] + [f"prob_{o}" for o in game.OUTCOMES] + [
        "payoff1", "payoff2", "payoff3", "mean"]
    row = values + [args.profile.upper()] + list(probs) + [
        pay.player1, pay.player2, pay.player3, pay.mean]
    return {"params": _params(args, profile=args.profile.upper()),
            "results": results, "csv": (header, [row])}


def cmd_classes(args) -> dict:
    table = _table(args)
    rows = []
    for cls in analysis.enumerate_classes():
        mean = analysis.simulated_class_mean(cls.multiset, table, args.x, args.gamma)
        rows.append({
            "label": cls.label,
            "multiset": "".join(cls.multiset),
            "size": cls.size,
            "mean_payoff": mean,
        })
    names, values = _param_columns(args)
    header = names + ["label", "multiset", "size", "mean_payoff"]
    csv_rows = [values + [r["label"], r["multiset"], r["size"], r["mean_payoff"]] for r in rows]
    return {"params": _params(args), "results": rows, "csv": (header, csv_rows)}


def cmd_sweep(args) -> dict:
    start, stop = args.start, args.stop
    if args.swept == "x":
        start = 0.0 if start is None else start
        stop = 1.0 if stop is None else stop
    if start is None or stop is None:
        raise ValueError(f"sweeping {args.swept} requires --from and --to")
    if args.grid < 1:
        raise ValueError("empty sweep range: --grid must be at least 1")
    if stop < start:
        raise ValueError(f"inverted sweep range [{start}, {stop}]")
    grid = np.linspace(start, stop, args.grid)
    records = analysis.sweep(_table(args), args.swept, grid, x=args.x, gamma=args.gamma)
    rows = [asdict(r) for r in records]
    # each record already echoes its effective p, q, n, x
    fields = list(rows[0])
    header = ["gamma", "seed"] + fields
    csv_rows = [[args.gamma, args.seed] + [row[f] for f in fields] for row in rows]
    return {"params": _params(args, swept=args.swept, start=start, stop=stop),
            "results": rows, "csv": (header, csv_rows)}


def cmd_xc(args) -> dict:
    table = _table(args)
    x_c = analysis.critical_corruption(table)
    report = analysis.dominance(table, args.x)
    results = {
        "x_c": x_c,
        "no_advantage": x_c is None,
        "report": asdict(report),
    }
    names, values = _param_columns(args)
    header = names + ["x_c", "no_advantage", "quantum_ne_mean", "classical_ne_mean", "dominant"]
    row = values + [x_c, x_c is None, report.quantum_ne_mean, report.classical_ne_mean,
                    report.dominant]
    return {"params": _params(args), "results": results, "csv": (header, [row])}


def _resolve_state(token: str, args) -> np.ndarray:
    """A state argument: strategy profile, bundled reference name, or file path."""
    if _PROFILE_RE.fullmatch(token):
        profile = game.parse_profile(token)
        return game.evolve(profile, noise.corrupted_input(args.x), args.gamma)
    if token in tomography.REFERENCE_STATES:
        return tomography.load_reference_state(token)
    if os.path.exists(token):
        return tomography.read_density_matrix(token)
    raise ValueError(
        f"cannot resolve state {token!r}: not a profile, bundled reference state, or file"
    )


def _resolve_target(token: str, args) -> np.ndarray:
    if _BITS_RE.fullmatch(token):
        return linalg.basis_density(token)
    return _resolve_state(token, args)


def _tensor_payload(args, t: np.ndarray, extra_params: dict) -> dict:
    names, values = _param_columns(args)
    header = names + ["i1", "i2", "i3", "value"]
    rows = [values + [i, j, k, t[i, j, k]]
            for i in range(4) for j in range(4) for k in range(4)]
    return {"params": _params(args, **extra_params),
            "results": {"tensor": t.tolist()}, "csv": (header, rows)}


def cmd_tomo(args) -> dict:
    task = args.task
    if task == "fidelity":
        if len(args.inputs) != 2:
            raise ValueError("tomo fidelity takes exactly two inputs: STATE TARGET")
        state = _resolve_state(args.inputs[0], args)
        target = _resolve_target(args.inputs[1], args)
        value = tomography.fidelity(state, target)
        names, values = _param_columns(args)
        return {
            "params": _params(args, state=args.inputs[0], target=args.inputs[1]),
            "results": {"fidelity": value},
            "csv": (names + ["fidelity"], [values + [value]]),
        }
    if len(args.inputs) != 1:
        raise ValueError(f"tomo {task} takes exactly one input")
    token = args.inputs[0]
    if task == "forward":
        t = tomography.expectations(_resolve_state(token, args))
        return _tensor_payload(args, t, {"state": token})
    if task == "estimate":
        t = tomography.estimate_expectations(_resolve_state(token, args), args.shots, args.seed)
        return _tensor_payload(args, t, {"state": token})
    # reconstruct: token is a JSON file from a previous forward/estimate run
    with open(token, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        tensor = np.array(doc["results"]["tensor"], dtype=float)
    except (KeyError, TypeError):
        raise ValueError(f"{token!r} does not contain a results.tensor block") from None
    rho = tomography.reconstruct(tensor)
    names, values = _param_columns(args)
    header = names + ["row", "col", "re", "im"]
    rows = [values + [i, j, rho[i, j].real, rho[i, j].imag]
            for i in range(8) for j in range(8)]
    return {
        "params": _params(args, tensor_file=token),
        "results": {"real": rho.real.tolist(), "imag": rho.imag.tolist()},
        "csv": (header, rows),
    }


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def emit(payload: dict, args):
    if args.fmt == "json":
        text = json.dumps({"params": payload["params"], "results": payload["results"]},
                          indent=2) + "\n"
    else:
        header, rows = payload["csv"]
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_csv_cell(v) for v in row])
        text = buf.getvalue()
    if args.output:
        _write_atomic(args.output, text)
    else:
        sys.stdout.write(text)


def _write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qdilemma-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


if __name__ == "__main__":
    sys.exit(main())
