import json
import random
from fractions import Fraction as F

import pytest

from nerode import generators as gen
from nerode import io
from nerode.errors import ParseError
from nerode.linear import LinearSystem
from nerode.signal import Sequence
from nerode.systems import FiniteWindowSystem, MealyMachine, ModularLinearSystem


def raw(obj):
    return json.dumps(obj).encode()


DELAY1 = io.machine_to_json(gen.delay_machine(1))


class TestMealy:
    def test_round_trip(self):
        m = gen.random_machine(random.Random(2), 6, 3, 2, 0.3)
        back = io.parse_system(io.machine_to_json(m))
        assert isinstance(back, MealyMachine)
        assert io.machine_to_json(back) == io.machine_to_json(m)

    def test_output_check_accepted(self):
        assert io.parse_system({**DELAY1, "default_output_check": "0"})

    def test_output_check_mismatch(self):
        with pytest.raises(ParseError) as info:
            io.parse_system({**DELAY1, "default_output_check": "1"})
        assert "default_output_check" in info.value.violations[0]

    def test_all_missing_fields_listed(self):
        with pytest.raises(ParseError) as info:
            io.parse_system({"type": "mealy", "inputs": ["0", "1"]})
        missing = {v.split(":")[0] for v in info.value.violations}
        assert missing == {"/default_input", "/outputs", "/states", "/rest_state",
                           "/transitions", "/emissions"}

    def test_invariant_violations_listed(self):
        doc = json.loads(json.dumps(DELAY1))
        del doc["transitions"]["d1"]["0"]
        doc["emissions"]["d0"]["1"] = "7"
        with pytest.raises(ParseError) as info:
            io.parse_system(doc)
        assert len(info.value.violations) == 2

    def test_rest_state_not_declared(self):
        with pytest.raises(ParseError) as info:
            io.parse_system({**DELAY1, "rest_state": "nowhere"})
        assert any("rest_state" in v for v in info.value.violations)

    def test_unknown_type(self):
        with pytest.raises(ParseError, match="/type"):
            io.parse_system({"type": "moore"})


class TestWindow:
    def test_round_trip(self):
        w = gen.random_window(random.Random(3), 3, 2)
        doc = io.window_to_json(w)
        assert "a2,a1" in doc["table"]
        back = io.parse_system(doc)
        assert isinstance(back, FiniteWindowSystem) and back.table == w.table

    def test_missing_entry(self):
        doc = io.window_to_json(gen.random_window(random.Random(3), 2, 2))
        del doc["table"]["a0,a1"]
        with pytest.raises(ParseError) as info:
            io.parse_system(doc)
        assert "a0,a1" in info.value.violations[0]


class TestLinear:
    def test_rational_round_trip(self):
        sys_ = gen.random_rational_system(random.Random(5), 3, 2, 1)
        doc = io.linear_to_json(sys_)
        back = io.parse_system(json.loads(json.dumps(doc)))
        assert isinstance(back, LinearSystem) and back == sys_

    def test_strings_and_ints(self):
        sys_ = io.parse_system({"type": "linear", "A": [["1/2"]], "B": [[1]],
                                "C": [["-3"]], "D": [[0]]})
        assert sys_.A[0, 0] == F(1, 2) and sys_.C[0, 0] == -3

    def test_floats_rejected(self):
        with pytest.raises(ParseError) as info:
            io.parse_system({"type": "linear", "A": [[0.5]], "B": [[1]], "C": [[1]], "D": [[0]]})
        assert info.value.violations == ["/A/0/0: expected integer or 'p/q' string"]

    def test_dimension_mismatch(self):
        with pytest.raises(ParseError) as info:
            io.parse_system({"type": "linear", "A": [[1, 0], [0, 1]], "B": [[1]],
                             "C": [[1, 0]], "D": [[0]]})
        assert any("B must have 2 rows" in v for v in info.value.violations)

    def test_modular(self):
        doc = {"type": "linear", "modulus": 2, "A": [[1]], "B": [[1]], "C": [[1]], "D": [[0]]}
        sys_ = io.parse_system(doc)
        assert isinstance(sys_, ModularLinearSystem)
        assert io.parse_system(io.linear_to_json(sys_)) == sys_

    def test_modular_rejects_fractions(self):
        doc = {"type": "linear", "modulus": 2, "A": [["1/2"]], "B": [[1]], "C": [[1]], "D": [[0]]}
        with pytest.raises(ParseError):
            io.parse_system(doc)


class TestFiles:
    def test_malformed_json_location(self):
        with pytest.raises(ParseError, match="line 2"):
            io.parse_system_file(b'{"type":\n  mealy}')

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError, match="cannot read"):
            io.parse_system_file(tmp_path / "nope.json")

    def test_sequence(self):
        u = io.parse_sequence(raw({"start": -1, "values": ["1", "0"]}), gen.BINARY)
        assert u == Sequence(gen.BINARY, -1, ("1",))

    def test_sequence_foreign_symbol(self):
        with pytest.raises(ParseError):
            io.parse_sequence(raw({"start": 0, "values": ["2"]}), gen.BINARY)

    def test_markov_forms(self):
        a = io.parse_markov(raw({"markov": [[[0]], [["1/2"]]]}))
        b = io.parse_markov(raw([[[0]], [["1/2"]]]))
        assert a == b and a[1][0, 0] == F(1, 2)
        assert io.markov_to_json(a) == {"markov": [[["0"]], [["1/2"]]]}

    def test_dumps_is_canonical(self):
        assert io.dumps({"b": 1, "a": [1]}) == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'
