"""Command-line front end.

Every verb prints one report (JSON by default, ``--format text`` for a
human-readable rendering).  Exit status: 0 when the command succeeds or the
checked property holds, 1 when the property fails, 2 on usage or input
errors.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import engine, io, linear
from .errors import NerodeError, ParseError, PreconditionError
from .linear import LinearSystem
from .systems import evaluate, to_mealy

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _digest(path: str) -> str:
    try:
        return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()
    except OSError:
        return "unreadable"


def _load_finite(path):
    sys_ = io.parse_system_file(path)
    if isinstance(sys_, LinearSystem):
        raise UsageError(f"{path}: rational linear systems are not finite-state; "
                         f"add a prime 'modulus' or use the markov/hokalman verbs")
    return sys_


def _load_linear(path) -> LinearSystem:
    sys_ = io.parse_system_file(path)
    if not isinstance(sys_, LinearSystem):
        raise UsageError(f"{path}: expected a rational linear system")
    return sys_


def _cex(word):
    return None if word is None else {"word": list(word)}


def cmd_simulate(args):
    sys_ = _load_finite(args.system)
    u = io.parse_sequence(args.input, sys_.input_alphabet)
    y = evaluate(sys_, u, args.lo, args.hi)
    return EXIT_OK, {
        "from": args.lo,
        "to": args.hi,
        "output": y.to_json(),
        "window": list(y.window(args.lo, args.hi + 1)),
    }


def _realization_json(real: engine.NerodeRealization) -> dict:
    return {
        "mode": real.domain_mode,
        "size": real.size,
        "machine": io.machine_to_json(real.machine),
        "projection": {str(k): v for k, v in real.projection.items()},
    }


def cmd_minimize(args):
    real = engine.minimize(_load_finite(args.system), args.mode)
    return EXIT_OK, _realization_json(real)


def cmd_equiv(args):
    m1 = to_mealy(_load_finite(args.system))
    m2 = to_mealy(_load_finite(args.against))
    same, word = engine.machine_equivalence(m1, m2, args.max_len)
    return (EXIT_OK if same else EXIT_FAIL), {
        "equivalent": same,
        "counterexample": _cex(word),
        "max_len": args.max_len,
    }


def cmd_quotient(args):
    given = to_mealy(_load_finite(args.system))
    if args.against:
        minimal = to_mealy(_load_finite(args.against))
    else:
        minimal = engine.minimize(given, engine.CONTROLLABLE)
    try:
        report = engine.quotient_map(given, minimal)
    except PreconditionError as exc:
        return EXIT_FAIL, {"error": str(exc), "counterexample": _cex(exc.counterexample)}
    out = report.to_json()
    out["controllable"] = [str(s) for s in engine.controllable_subset(given)]
    out["quotient_states"] = [str(s) for s in (
        minimal.machine if isinstance(minimal, engine.NerodeRealization) else minimal
    ).states]
    return (EXIT_OK if report.holds else EXIT_FAIL), out


def cmd_xc(args):
    m = to_mealy(_load_finite(args.system))
    return EXIT_OK, {
        "controllable": [str(s) for s in engine.controllable_subset(m)],
        "reachable": [str(s) for s in engine.reachable_states(m)],
        "states": [str(s) for s in m.states],
    }


def cmd_nerode_eq(args):
    sys_ = _load_finite(args.system)
    real = engine.minimize(sys_)
    u1 = io.parse_sequence(args.u1, sys_.input_alphabet)
    u2 = io.parse_sequence(args.u2, sys_.input_alphabet)
    same = engine.nerode_equivalent(real, u1, u2)
    return (EXIT_OK if same else EXIT_FAIL), {
        "equivalent": same,
        "state_u1": engine.state_at(real, u1, 0),
        "state_u2": engine.state_at(real, u2, 0),
    }


def cmd_markov(args):
    sys_ = _load_linear(args.system)
    if args.count < 1:
        raise UsageError("--count must be positive")
    return EXIT_OK, io.markov_to_json(linear.markov_parameters(sys_, args.count))


def cmd_hokalman(args):
    markov = io.parse_markov(args.markov)
    real = linear.ho_kalman(markov, args.block_rows, args.block_cols, args.p, args.m)
    return EXIT_OK, {"order": real.order, "system": io.linear_to_json(real)}


def cmd_validate(args):
    try:
        sys_ = io.parse_system_file(args.system)
    except ParseError as exc:
        if not exc.violations:
            raise
        return EXIT_FAIL, {"valid": False, "violations": exc.violations}
    kind = type(sys_).__name__
    return EXIT_OK, {"valid": True, "violations": [], "kind": kind}


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--output", metavar="F", default=argparse.SUPPRESS)

    parser = _Parser(prog="nerode", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--output", metavar="F", default=None)
    sub = parser.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    sub.required = True

    def verb(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = verb("simulate", cmd_simulate, "evaluate a system on an input sequence")
    p.add_argument("--system", required=True, metavar="F")
    p.add_argument("--input", required=True, metavar="F")
    p.add_argument("--from", dest="lo", type=int, required=True, metavar="N")
    p.add_argument("--to", dest="hi", type=int, required=True, metavar="N")

    p = verb("minimize", cmd_minimize, "build the Nerode realization")
    p.add_argument("--system", required=True, metavar="F")
    p.add_argument("--mode", choices=("rest", "xc"), default="rest")

    p = verb("equiv", cmd_equiv, "check input/output equivalence of two systems")
    p.add_argument("--system", required=True, metavar="F")
    p.add_argument("--against", required=True, metavar="F")
    p.add_argument("--max-len", type=int, default=None, metavar="N")

    p = verb("quotient", cmd_quotient, "build and check the quotient map onto the minimal machine")
    p.add_argument("--system", required=True, metavar="F")
    p.add_argument("--against", default=None, metavar="F")

    p = verb("xc", cmd_xc, "controllable subset of a realization")
    p.add_argument("--system", required=True, metavar="F")

    p = verb("nerode-eq", cmd_nerode_eq, "Nerode equivalence of two input histories at time 0")
    p.add_argument("--system", required=True, metavar="F")
    p.add_argument("--u1", required=True, metavar="F")
    p.add_argument("--u2", required=True, metavar="F")

    p = verb("markov", cmd_markov, "Markov parameters of a rational linear system")
    p.add_argument("--system", required=True, metavar="F")
    p.add_argument("--count", type=int, required=True, metavar="N")

    p = verb("hokalman", cmd_hokalman, "minimal linear realization from Markov parameters")
    p.add_argument("--markov", required=True, metavar="F")
    p.add_argument("--block-rows", type=int, required=True, metavar="N")
    p.add_argument("--block-cols", type=int, required=True, metavar="N")
    p.add_argument("--p", type=int, required=True, metavar="N")
    p.add_argument("--m", type=int, required=True, metavar="N")

    p = verb("validate", cmd_validate, "check a system file against its schema and invariants")
    p.add_argument("--system", required=True, metavar="F")
    return parser


_FILE_FLAGS = ("system", "against", "input", "u1", "u2", "markov")


def _render_text(report: dict) -> str:
    lines = [f"{report['verb']}: exit {report['exit_code']}"]

    def walk(value, indent):
        pad = "  " * indent
        if isinstance(value, dict):
            for k in sorted(value):
                v = value[k]
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_scalar(v)}")
        elif isinstance(value, list):
            if all(not isinstance(v, (dict, list)) for v in value):
                lines.append(pad + " ".join(_scalar(v) for v in value))
            else:
                for v in value:
                    if isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v):
                        lines.append(pad + "- " + " ".join(_scalar(x) for x in v))
                    else:
                        lines.append(pad + "-")
                        walk(v, indent + 1)

    walk(report["result"], 1)
    return "\n".join(lines) + "\n"


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return "(none)"
    return str(v)


def run(argv=None, stdout=None, stderr=None) -> int:
    """Execute one command; returns the exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        code, result = args.func(args)
    except UsageError as exc:
        print(f"nerode: error: {exc}", file=stderr)
        return EXIT_USAGE
    except (NerodeError, ValueError) as exc:
        print(f"nerode: error: {exc}", file=stderr)
        return EXIT_USAGE
    inputs = {flag: _digest(getattr(args, flag)) for flag in _FILE_FLAGS
              if getattr(args, flag, None)}
    report = {"verb": args.verb, "inputs": inputs, "result": result, "exit_code": code}
    text = _render_text(report) if args.format == "text" else io.dumps(report)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
