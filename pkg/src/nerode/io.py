"""JSON file formats for machines, window systems, linear systems and sequences.

Every parser collects all problems it can find before raising
:class:`~nerode.errors.ParseError`.  Serializers emit canonical documents:
keys sorted, arrays in declared alphabet/state order.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from .errors import AlphabetError, ParseError, ValidationError
from .linear import LinearSystem, RationalMatrix, linear_violations
from .signal import Alphabet, Sequence
from .systems import (FiniteWindowSystem, MealyMachine, ModularLinearSystem,
                      validate_machine)

__all__ = [
    "load_json",
    "dumps",
    "parse_system",
    "parse_system_file",
    "parse_sequence",
    "parse_markov",
    "system_to_json",
    "machine_to_json",
    "window_to_json",
    "linear_to_json",
    "markov_to_json",
]

Source = Union[str, Path, bytes]


def load_json(source: Source, location: str = None):
    """Decode UTF-8 JSON from a path or raw bytes."""
    if isinstance(source, (bytes, bytearray)):
        raw, location = bytes(source), location or "<bytes>"
    else:
        location = location or str(source)
        try:
            raw = Path(source).read_bytes()
        except OSError as exc:
            raise ParseError(f"cannot read file: {exc.strerror}", location=location) from None
    try:
        return json.loads(raw.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc.reason}", location=location) from None
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"malformed JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})",
            location=location,
        ) from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class _Collector:
    def __init__(self, location):
        self.location = location
        self.problems = []

    def field(self, obj, key, kind, path=""):
        where = f"{path}/{key}"
        if key not in obj:
            self.problems.append(f"{where}: missing required field")
            return None
        value = obj[key]
        if kind is int and isinstance(value, bool):
            self.problems.append(f"{where}: expected integer")
            return None
        if not isinstance(value, kind):
            self.problems.append(f"{where}: expected {getattr(kind, '__name__', kind)}")
            return None
        return value

    def fail_if_any(self, message="schema violation"):
        if self.problems:
            raise ParseError(message, self.problems, self.location)


def _alphabet(col, obj, key, default, path=""):
    syms = col.field(obj, key, list, path)
    if syms is None or default is None:
        return None
    if not all(isinstance(s, str) for s in syms):
        col.problems.append(f"{path}/{key}: symbols must be strings")
        return None
    try:
        return Alphabet(tuple(syms), default)
    except AlphabetError as exc:
        col.problems.append(f"{path}/{key}: {exc}")
        return None


def _parse_mealy(obj, col) -> MealyMachine:
    default = col.field(obj, "default_input", str)
    alpha = _alphabet(col, obj, "inputs", default)
    outputs = col.field(obj, "outputs", list)
    states = col.field(obj, "states", list)
    rest = col.field(obj, "rest_state", str)
    trans = col.field(obj, "transitions", dict)
    emis = col.field(obj, "emissions", dict)
    for name, table in (("transitions", trans), ("emissions", emis)):
        for s, row in (table or {}).items():
            if not isinstance(row, dict):
                col.problems.append(f"/{name}/{s}: expected object")
    col.fail_if_any()
    m = MealyMachine(alpha, tuple(outputs), tuple(states), rest,
                     {s: dict(r) for s, r in trans.items()},
                     {s: dict(r) for s, r in emis.items()})
    problems = validate_machine(m)
    check = obj.get("default_output_check")
    if check is not None and not problems and check != m.output_default:
        problems.append(
            f"default_output_check {check!r} differs from emission of default input "
            f"at rest {m.output_default!r}"
        )
    if problems:
        raise ParseError("invariant violation", problems, col.location)
    return m


def _parse_window(obj, col) -> FiniteWindowSystem:
    default = col.field(obj, "default_input", str)
    alpha = _alphabet(col, obj, "inputs", default)
    outputs = col.field(obj, "outputs", list)
    window = col.field(obj, "window", int)
    table = col.field(obj, "table", dict)
    col.fail_if_any()
    parsed = {}
    for key, y in table.items():
        parsed[tuple(key.split(",")) if key else ()] = y
    w = FiniteWindowSystem(alpha, tuple(outputs), window, parsed)
    problems = w.violations()
    if problems:
        raise ParseError("invariant violation", problems, col.location)
    return w


def _rational(value, where, col):
    if isinstance(value, bool) or isinstance(value, float):
        col.problems.append(f"{where}: expected integer or 'p/q' string")
        return None
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        col.problems.append(f"{where}: {value!r} is not a rational number")
        return None


def _rational_rows(value, where, col):
    if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
        col.problems.append(f"{where}: expected a list of rows")
        return None
    return [[_rational(v, f"{where}/{i}/{j}", col) for j, v in enumerate(r)]
            for i, r in enumerate(value)]


def _matrix(rows, cols, where, col):
    if rows is None:
        return None
    if any(len(r) != cols for r in rows):
        col.problems.append(f"{where}: rows must all have {cols} entries")
        return None
    return RationalMatrix.from_rows(rows, cols)


def _parse_linear(obj, col):
    raw = {k: _rational_rows(obj.get(k), f"/{k}", col) if k in obj else None for k in "ABCD"}
    for k in "ABCD":
        if k not in obj:
            col.problems.append(f"/{k}: missing required field")
    col.fail_if_any()
    D = raw["D"]
    p = len(D)
    m = len(D[0]) if D else 0
    n = len(raw["A"])
    mats = {
        "A": _matrix(raw["A"], n, "/A", col),
        "B": _matrix(raw["B"], m, "/B", col),
        "C": _matrix(raw["C"], n, "/C", col),
        "D": _matrix(D, m, "/D", col),
    }
    col.fail_if_any()
    problems = linear_violations(*(mats[k] for k in "ABCD"))
    if problems:
        raise ParseError("invariant violation", problems, col.location)
    modulus = obj.get("modulus")
    if modulus is None:
        return LinearSystem(*(mats[k] for k in "ABCD"))
    if not all(v.denominator == 1 for k in "ABCD" for v in mats[k].entries):
        raise ParseError("invariant violation",
                         ["modular systems need integer entries"], col.location)
    try:
        return ModularLinearSystem(
            *([[int(v) for v in row] for row in mats[k].to_rows()] for k in "ABCD"),
            p=modulus,
        )
    except ValidationError as exc:
        raise ParseError("invariant violation", exc.violations, col.location) from None


_PARSERS = {"mealy": _parse_mealy, "window": _parse_window, "linear": _parse_linear}


def parse_system(obj, location: str = "<input>"):
    """Turn a decoded JSON document into a system object."""
    col = _Collector(location)
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object", location=location)
    kind = obj.get("type")
    if kind not in _PARSERS:
        raise ParseError(
            f"/type: expected one of {sorted(_PARSERS)}, got {kind!r}", location=location
        )
    return _PARSERS[kind](obj, col)


def parse_system_file(source: Source, location: str = None):
    """Load and validate a system file (machine, window or linear schema)."""
    if location is None and not isinstance(source, (bytes, bytearray)):
        location = str(source)
    return parse_system(load_json(source, location), location or "<bytes>")


def parse_sequence(source: Source, alphabet: Alphabet, location: str = None) -> Sequence:
    obj = load_json(source, location)
    location = location or (str(source) if not isinstance(source, (bytes, bytearray)) else "<bytes>")
    col = _Collector(location)
    if not isinstance(obj, dict):
        raise ParseError("sequence must be a JSON object", location=location)
    start = col.field(obj, "start", int) if "start" in obj else 0
    values = col.field(obj, "values", list)
    col.fail_if_any()
    try:
        return Sequence.from_json({"default": obj.get("default", alphabet.default),
                                   "start": start, "values": values}, alphabet)
    except AlphabetError as exc:
        raise ParseError("invariant violation", [str(exc)], location) from None


def parse_markov(source: Source, location: str = None) -> list:
    """Markov list: ``{"markov": [matrix, ...]}`` or a bare list of matrices."""
    obj = load_json(source, location)
    location = location or (str(source) if not isinstance(source, (bytes, bytearray)) else "<bytes>")
    col = _Collector(location)
    seq = obj.get("markov") if isinstance(obj, dict) else obj
    if not isinstance(seq, list) or not seq:
        raise ParseError("expected a non-empty list of matrices", location=location)
    out = []
    for k, mat in enumerate(seq):
        rows = _rational_rows(mat, f"/markov/{k}", col)
        if rows is not None:
            out.append(_matrix(rows, len(rows[0]) if rows else 0, f"/markov/{k}", col))
    col.fail_if_any()
    return out


def machine_to_json(m: MealyMachine) -> dict:
    syms = m.input_alphabet.symbols
    return {
        "type": "mealy",
        "inputs": list(syms),
        "outputs": list(m.outputs),
        "default_input": m.input_alphabet.default,
        "states": list(m.states),
        "rest_state": m.rest_state,
        "transitions": {s: {a: m.step(a, s) for a in syms} for s in m.states},
        "emissions": {s: {a: m.emit(a, s) for a in syms} for s in m.states},
    }


def window_to_json(w: FiniteWindowSystem) -> dict:
    return {
        "type": "window",
        "inputs": list(w.input_alphabet.symbols),
        "outputs": list(w.outputs),
        "default_input": w.input_alphabet.default,
        "window": w.window,
        "table": {",".join(k): w.table[k] for k in w.words()},
    }


def linear_to_json(sys) -> dict:
    if isinstance(sys, ModularLinearSystem):
        return {"type": "linear", "modulus": sys.p,
                **{k: [[str(v) for v in row] for row in getattr(sys, k)] for k in "ABCD"}}
    return {"type": "linear", **{k: getattr(sys, k).to_json() for k in "ABCD"}}


def system_to_json(sys) -> dict:
    if isinstance(sys, MealyMachine):
        return machine_to_json(sys)
    if isinstance(sys, FiniteWindowSystem):
        return window_to_json(sys)
    return linear_to_json(sys)


def markov_to_json(markov) -> dict:
    return {"markov": [mk.to_json() for mk in markov]}
