"""``chiwb run <session>``: execute a session file and report the results."""

import argparse
import json
import sys
import time

from . import blowup, corpus, diagonal, homology, multiplicity
from ._engine import DEFAULT_BUDGET, step_budget
from .errors import AssertionFailed, ChiwbError, ParseError, PreconditionError
from .field import Field, QQ
from .groebner import Ideal, krull_dimension, local_dimension, tangent_cone
from .parse import Command, IdealDecl, RingDecl, parse_session
from .reports import plain

EXIT_OK, EXIT_INPUT, EXIT_ASSERTION = 0, 1, 2
JSON_SAFE_INT = 2**53

# Field compared against a trailing ``expect=<n>`` option.
MAIN_VALUE = {
    "chi": "chi",
    "tor": "k_dimension",
    "resolution": "length",
    "multiplicity": "point_multiplicity",
    "tangentcone": "dimension",
    "transversal": "chi",
    "diagonal": "chi_via_diagonal",
    "blowupchi": "total_blowup_chi",
    "fulton": "fulton_lhs",
    "corollaryd": "chi",
    "scan": "applicable",
}


def parse_field(text):
    if text == "QQ":
        return QQ
    kind, _, p = text.partition(":")
    if kind != "FF" or not p.isdigit():
        raise argparse.ArgumentTypeError(f"field must be QQ or FF:<p>, got {text!r}")
    try:
        return Field(int(p))
    except ChiwbError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class SessionState:
    def __init__(self, seed=0, scan_field=corpus.DEFAULT_FIELD):
        self.rings = {}
        self.ideals = {}
        self.seed = seed
        self.scan_field = scan_field

    def ideal(self, name):
        if not isinstance(name, str) or name not in self.ideals:
            raise PreconditionError(f"unknown ideal {name!r}")
        return self.ideals[name]


def _model(I):
    ring = I.ring
    base = ring.base_vars
    left = ring.variables[len(base):]
    right = [f"{v}_r" for v in left]
    return diagonal.build_tensor_model(base, left, right, ring.field)


def _drop_witnesses(d):
    d.pop("witnesses", None)
    return d


def _cmd_chi(state, cmd):
    I, J = state.ideal(cmd.args[0]), state.ideal(cmd.args[1])
    return _drop_witnesses(homology.chi(I, J).to_dict())


def _cmd_tor(state, cmd):
    I, J = state.ideal(cmd.args[0]), state.ideal(cmd.args[1])
    i = cmd.args[2]
    if not isinstance(i, int):
        raise PreconditionError("tor index must be an integer")
    M, N = homology.PresentedModule.from_ideal(I), homology.PresentedModule.from_ideal(Ideal(I.ring, J.generators))
    T = homology.tor(M, N, i)
    return {"i": i, "k_dimension": T.k_dimension(), "rank": T.rank}


def _cmd_resolution(state, cmd):
    I = state.ideal(cmd.args[0])
    F = homology.free_resolution(homology.PresentedModule.from_ideal(I))
    return {"ranks": F.ranks, "length": F.length, "exact": F.exact}


def _cmd_multiplicity(state, cmd):
    I = state.ideal(cmd.args[0])
    d = local_dimension(I)
    m = Ideal(I.ring, I.ring.gens())
    return {
        "point_multiplicity": multiplicity.point_multiplicity(I),
        "hs_multiplicity": multiplicity.hs_multiplicity(I, m, d),
        "dimension": d,
    }


def _cmd_tangentcone(state, cmd):
    cone = tangent_cone(state.ideal(cmd.args[0]))
    return {"tangent_cone": str(Ideal(cone.ring, cone.groebner().elements)), "dimension": krull_dimension(cone)}


def _cmd_transversal(state, cmd):
    I, J = state.ideal(cmd.args[0]), state.ideal(cmd.args[1])
    return multiplicity.transversality_check(I, J).to_dict()


def _cmd_diagonal(state, cmd):
    I, J = state.ideal(cmd.args[0]), state.ideal(cmd.args[1])
    model = _model(I)
    return diagonal.diagonal_decompose(model, I, model.to_right(J)).to_dict()


def _cmd_flatcheck(state, cmd):
    I = state.ideal(cmd.args[0])
    return diagonal.r_flatness_check(_model(I), I).to_dict()


def _points_call(fn):
    def run(state, cmd):
        I, J = state.ideal(cmd.args[0]), state.ideal(cmd.args[1])
        return fn(I, J, cmd.points).to_dict()

    return run


def _cmd_scan(state, cmd):
    count = cmd.options.get("count", 10)
    field = state.scan_field
    return corpus.scan(cmd.args[0], count, state.seed, field).to_dict()


HANDLERS = {
    "chi": _cmd_chi,
    "tor": _cmd_tor,
    "resolution": _cmd_resolution,
    "multiplicity": _cmd_multiplicity,
    "tangentcone": _cmd_tangentcone,
    "transversal": _cmd_transversal,
    "diagonal": _cmd_diagonal,
    "flatcheck": _cmd_flatcheck,
    "blowupchi": _points_call(blowup.blowup_chi),
    "fulton": _points_call(blowup.fulton_verify),
    "corollaryd": _points_call(blowup.corollary_d_check),
    "scan": _cmd_scan,
}


def _jsonable(value):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > JSON_SAFE_INT else value
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    return value


def _check_expect(cmd, payload):
    if "expect" not in cmd.options:
        return
    key = MAIN_VALUE[cmd.name]
    got = payload.get(key)
    if got != cmd.options["expect"]:
        raise AssertionFailed(f"expected {key} = {cmd.options['expect']}, got {got}", payload)


def execute(cmd, state, budget=DEFAULT_BUDGET, timing=False):
    """Run one command; always returns a result dict, never raises ChiwbError."""
    result = {"command": cmd.text, "status": "ok"}
    start = time.perf_counter()
    try:
        with step_budget(budget):
            payload = plain(HANDLERS[cmd.name](state, cmd))
        _check_expect(cmd, payload)
        result.update(payload)
    except AssertionFailed as exc:
        result["status"] = "assertion_failed"
        result["message"] = str(exc)
        if exc.report is not None:
            result["report"] = plain(exc.report)
    except ChiwbError as exc:
        result["status"] = "error"
        result["error"] = type(exc).__name__
        result["message"] = str(exc)
    if timing:
        result["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    return result


def run_session(text, field=None, budget=DEFAULT_BUDGET, seed=0, timing=False):
    """Execute a session; returns (exit code, list of result dicts)."""
    try:
        session = parse_session(text, field)
    except ParseError as exc:
        return EXIT_INPUT, [
            {
                "command": "<parse>",
                "status": "error",
                "error": "ParseError",
                "message": str(exc),
                "line": exc.line,
                "column": exc.column,
            }
        ]
    state = SessionState(seed, field or corpus.DEFAULT_FIELD)
    results = []
    for stmt in session.statements:
        if isinstance(stmt, RingDecl):
            state.rings[stmt.name] = stmt.ring
        elif isinstance(stmt, IdealDecl):
            state.ideals[stmt.name] = Ideal(state.rings[stmt.ring_name], stmt.generators)
        elif isinstance(stmt, Command):
            results.append(execute(stmt, state, budget, timing))
    statuses = {r["status"] for r in results}
    if "assertion_failed" in statuses:
        return EXIT_ASSERTION, results
    if "error" in statuses:
        return EXIT_INPUT, results
    return EXIT_OK, results


def emit_report(results, fmt="text"):
    """Render results as text blocks or as the version-1 JSON document."""
    if fmt == "json":
        doc = {"version": 1, "results": [_jsonable(r) for r in results]}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    blocks = []
    for n, r in enumerate(results, start=1):
        lines = [f"[{n}] {r['command']}", f"  status: {r['status']}"]
        for key, value in r.items():
            if key in ("command", "status"):
                continue
            if isinstance(value, (dict, list)):
                value = json.dumps(_jsonable(value), ensure_ascii=False)
            lines.append(f"  {key}: {value}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + ("\n" if blocks else "")


def build_parser():
    parser = argparse.ArgumentParser(prog="chiwb", description="Intersection multiplicity workbench.")
    sub = parser.add_subparsers(dest="cmd", required=True)
    run = sub.add_parser("run", help="execute a session file")
    run.add_argument("session", help="path to the session file ('-' for stdin)")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--field", type=parse_field, default=None, help="QQ or FF:<p>; overrides every ring")
    run.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="reduction steps allowed per command")
    run.add_argument("--seed", type=int, default=0, help="seed for scan commands")
    run.add_argument("--timing", action="store_true", help="include per-command wall time")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.session == "-":
            text = sys.stdin.read()
        else:
            with open(args.session, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"chiwb: cannot read {args.session}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    code, results = run_session(text, args.field, args.budget, args.seed, args.timing)
    sys.stdout.write(emit_report(results, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
