"""Fixture invocations for the command-line tool: (argv, expected exit, check)."""

from pathlib import Path

FIX = Path(__file__).parent / "fixtures"


def f(name):
    return str(FIX / name)


def _minimize_delay2(r):
    return r["size"] == 4 and len(r["machine"]["states"]) == 4


def _equiv_cex(r):
    return r["equivalent"] is False and len(r["counterexample"]["word"]) == 2


def _quotient_clean(r):
    return (r["surjective"] and not r["f_violations"] and not r["g_violations"]
            and len(set(r["map"].values())) == 2)


def _hk(r):
    return r["order"] == 1


CASES = [
    ("simulate", ["simulate", "--system", f("delay1.json"), "--input", f("u_pulse.json"),
                  "--from", "-1", "--to", "4"], 0,
     lambda r: r["window"] == ["0", "0", "1", "0", "1", "0"]),
    ("simulate-window", ["simulate", "--system", f("identity_window.json"),
                         "--input", f("u_pulse.json"), "--from", "0", "--to", "2"], 0,
     lambda r: r["window"] == ["1", "0", "1"]),
    ("simulate-mod2", ["simulate", "--system", f("parity_mod2.json"), "--input", f("u_pulse.json"),
                       "--from", "0", "--to", "3"], 0,
     lambda r: r["window"] == ["0", "1", "1", "0"]),
    ("minimize-rest", ["minimize", "--system", f("delay2.json"), "--mode", "rest"], 0,
     _minimize_delay2),
    ("minimize-xc", ["minimize", "--system", f("redundant.json"), "--mode", "xc"], 0,
     lambda r: r["size"] == 2 and r["mode"] == "controllable"),
    ("equiv-differ", ["equiv", "--system", f("delay1.json"), "--against", f("delay2.json")], 1,
     _equiv_cex),
    ("equiv-same", ["equiv", "--system", f("delay1.json"), "--against", f("redundant.json")], 0,
     lambda r: r["equivalent"] and r["counterexample"] is None),
    ("equiv-bounded", ["equiv", "--system", f("delay1.json"), "--against", f("delay2.json"),
                       "--max-len", "1"], 0, lambda r: r["equivalent"]),
    ("quotient-self", ["quotient", "--system", f("redundant.json")], 0, _quotient_clean),
    ("quotient-against", ["quotient", "--system", f("redundant.json"),
                          "--against", f("delay1.json")], 0, _quotient_clean),
    ("quotient-wrong-target", ["quotient", "--system", f("delay1.json"),
                               "--against", f("delay2.json")], 1,
     lambda r: len(r["counterexample"]["word"]) == 2),
    ("quotient-non-minimal-target", ["quotient", "--system", f("delay1.json"),
                                     "--against", f("redundant.json")], 1,
     lambda r: r["surjective"] is False),
    ("xc", ["xc", "--system", f("delay2.json")], 0,
     lambda r: r["controllable"] == r["states"]),
    ("nerode-eq-differ", ["nerode-eq", "--system", f("delay1.json"),
                          "--u1", f("u_past0.json"), "--u2", f("u_past1.json")], 1,
     lambda r: r["equivalent"] is False),
    ("nerode-eq-same", ["nerode-eq", "--system", f("identity_window.json"),
                        "--u1", f("u_past0.json"), "--u2", f("u_past1.json")], 0,
     lambda r: r["equivalent"] is True),
    ("markov", ["markov", "--system", f("half_pole_3.json"), "--count", "4"], 0,
     lambda r: r["markov"] == [[["0"]], [["1"]], [["1/2"]], [["1/4"]]]),
    ("hokalman", ["hokalman", "--markov", f("half_pole_markov.json"), "--block-rows", "4",
                  "--block-cols", "4", "--p", "1", "--m", "1"], 0, _hk),
    ("validate-ok", ["validate", "--system", f("delay1.json")], 0, lambda r: r["valid"]),
    ("validate-bad-rest", ["validate", "--system", f("bad_rest.json")], 1,
     lambda r: any("rest_state" in v for v in r["violations"])),
    ("validate-window-hole", ["validate", "--system", f("window_missing.json")], 1,
     lambda r: any("a1,a0" in v for v in r["violations"])),
    # usage and input errors: no report on stdout
    ("validate-malformed", ["validate", "--system", f("malformed.json")], 2, None),
    ("missing-file", ["xc", "--system", f("absent.json")], 2, None),
    ("unknown-verb", ["explode"], 2, None),
    ("missing-flag", ["simulate", "--system", f("delay1.json")], 2, None),
    ("bad-mode", ["minimize", "--system", f("delay1.json"), "--mode", "all"], 2, None),
    ("hokalman-unsaturated", ["hokalman", "--markov", f("two_pole_short_markov.json"),
                              "--block-rows", "2", "--block-cols", "2", "--p", "1", "--m", "1"],
     2, None),
    ("markov-on-machine", ["markov", "--system", f("delay1.json"), "--count", "3"], 2, None),
    ("finite-verb-on-rational", ["minimize", "--system", f("half_pole_3.json")], 2, None),
    ("alphabet-mismatch", ["equiv", "--system", f("delay1.json"),
                           "--against", f("delay1_ternary.json")], 2, None),
    ("equiv-mod2", ["equiv", "--system", f("delay1.json"), "--against", f("parity_mod2.json")], 1,
     lambda r: r["counterexample"]["word"] == ["1", "0", "0"]),
]

VERBS = {"simulate", "minimize", "equiv", "quotient", "xc", "nerode-eq", "markov",
         "hokalman", "validate"}
