"""CLI commands, exit codes, JSON output and re-parsing of printed values."""
import io
import json
import subprocess
import sys

import pytest

from wittkit import WittCtx, Z, free_ring
from wittkit import io as wio
from wittkit.cli import parse_components, run
from wittkit.errors import ParseError
from wittkit.geometry import projective_line
from wittkit.poly import parse_poly
from wittkit.rings import presented_ring
from wittkit.scalars import ZZ, Scalar


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    return code, json.loads(out) if out else None, json.loads(err) if err else None


ZX = json.dumps({"base": "Z", "vars": ["x"], "relations": []})


# -- examples -------------------------------------------------------------------------

def test_witt_mul_example():
    code, d, _ = call_json("witt", "mul", "--p", "2", "--n", "1", "0,1", "0,1")
    assert code == 0 and d["components"] == ["0", "2"]


def test_from_ghost_not_in_image():
    code, _, e = call_json("witt", "from-ghost", "--p", "2", "--n", "1", "1,2")
    assert code == 3 and e["error"] == "NotInGhostImage"
    code, _, _ = call_json("witt", "from-ghost", "--p", "2", "--n", "1", "1,3")
    assert code == 0


def test_jet_present_free():
    code, d, _ = call_json("jet", "present", "--p", "2", "--n", "1", "--ring", ZX)
    assert code == 0 and d["vars"] == ["x", "d1_x"] and d["relations"] == []


def test_flags_after_operands():
    assert call("witt", "add", "0,1", "--p", "3", "0,2")[0] == 0


# -- exit codes -------------------------------------------------------------------------

@pytest.mark.parametrize("argv", [
    ["witt", "add", "--bogus", "1", "2"],
    ["witt", "add", "--p", "4", "1", "2"],
    ["witt", "add", "--p", "2", "--n", "1", "1,2,3", "1,2"],
    ["witt", "add", "--p", "2", "1,x^", "1,2"],
    ["witt", "frobnicate"],
    ["verify", "nope"],
    ["cache", "show", "extra"],
    ["witt", "add", "--ring", "{not json"],
])
def test_parse_errors_exit_2(argv):
    code, _, err = call(*argv)
    assert code == 2 and err.startswith("error:")


def test_math_errors_exit_3():
    assert call("witt", "section", "--p", "3", "--n", "0", "10", "3")[0] == 3
    assert call("jet", "greenberg", "--p", "2")[0] == 3


def test_verify_exit_codes():
    code, d, _ = call_json("verify", "socle", "--p", "3", "--n", "2", "--seed", "4")
    assert code == 0 and d["ok"] and d["suites"][0]["suite"] == "socle"
    code, out, _ = call("verify", "witt-space", "--p", "2", "--n", "1")
    assert code == 0 and out.startswith("witt-space: PASS")


def test_errors_in_json_mode():
    code, _, e = call_json("witt", "add", "--p", "9", "1", "1")
    assert code == 2 and e["exit_code"] == 2 and e["error"] == "ParseError"


# -- actions ------------------------------------------------------------------------------

def test_witt_actions_text():
    assert call("witt", "ghost", "--p", "3", "--n", "1", "2,1")[1].strip() == "(2, 11)"
    assert call("witt", "teich", "--p", "2", "--n", "2", "5")[1].strip() == "(5, 0, 0)"
    assert call("witt", "versch", "--p", "2", "--n", "2", "1,0")[1].strip() == "(0, 1, 0)"
    assert call("witt", "frob", "--p", "2", "--n", "1", "0,1")[1].strip() == "(2)"


def test_witt_actions_json_shapes():
    for argv in (["rgh", "3,1"], ["alpha", "3,1"], ["present-Z"], ["coplethysm", "1,2,3", "--n", "2"],
                 ["big"], ["big", "5"], ["localize", "x", "--ring", ZX]):
        code, d, _ = call_json("witt", *argv)
        assert code == 0 and isinstance(d, dict), argv
    _, d, _ = call_json("witt", "big", "--seed", "3")
    assert d["orders_agree"] and set(d["flat_ghost"]) == {"1", "2", "3", "6"}


def test_jet_actions():
    assert call("jet", "delta", "--p", "2", "--ring", ZX, "x^2")[1].strip() == "2*x^2*d1_x+2*d1_x^2"
    for action in ("coghost", "rcgh", "blowup", "iso-check"):
        code, d, _ = call_json("jet", action, "--p", "3", "--ring", ZX)
        assert code == 0, action
    Z4 = json.dumps({"base": "Z/4", "vars": ["x"], "relations": ["x^2-1"]})
    code, d, _ = call_json("jet", "greenberg", "--p", "2", "--ring", Z4)
    assert code == 0 and d["base"] == "Z/2"


def test_scheme_actions(tmp_path):
    code, d, _ = call_json("scheme", "h0-p1", "--p", "3", "--n", "1")
    assert code == 0 and d["rank"] == 2
    f = tmp_path / "p1.json"
    f.write_text(wio.dumps(wio.scheme_to_dict(projective_line())))
    code, _, _ = call_json("scheme", "witt-space", "--scheme", str(f))
    assert code == 0


def test_cache_rebuild_is_byte_identical():
    code, d, _ = call_json("cache", "build", "--p", "3", "--n", "2")
    assert code == 0 and d["exists"]
    first = open(d["path"], "rb").read()
    call_json("cache", "build", "--p", "3", "--n", "2")
    assert open(d["path"], "rb").read() == first
    _, shown, _ = call_json("cache", "show", "--p", "3", "--n", "2")
    assert shown["bytes"] == len(first)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "wittkit", "witt", "add", "--p", "2", "1,0", "1,0"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "(2, -1)"


# -- round trips ----------------------------------------------------------------------------

def test_parse_components():
    assert parse_components("1,2") == ["1", "2"]
    assert parse_components("[\"x+1\", \"(x,1)\"]") == ["x+1", "(x,1)"]
    assert parse_components("(x^2+1, 3)") == ["x^2+1", "3"]


@pytest.mark.parametrize("argv", [
    ["witt", "mul", "--p", "3", "--n", "2", "1,2,3", "4,5,6"],
    ["witt", "add", "--p", "2", "--n", "1", "x,1", "x^2,x"],
    ["witt", "teich", "--p", "2", "--n", "2", "x+1"],
])
def test_printed_vectors_reparse(argv):
    ring = ["--ring", ZX] if any("x" in a for a in argv[4:]) else []
    code, d, _ = call_json(*argv, *ring)
    v = wio.witt_from_dict(d)
    code2, out, _ = call(*argv, *ring)
    W = v.ctx
    assert W.vec(parse_components(out.strip())) == v


def test_ring_and_scheme_dicts_roundtrip():
    for R in (Z, free_ring("x y"), presented_ring(ZZ, ["x"], ["x^2-2*x"]),
              presented_ring(Scalar.mod(9), ["t"], ["t^3-1"])):
        R2 = wio.ring_from_dict(json.loads(wio.dumps(wio.ring_to_dict(R))))
        assert R2.vars == R.vars and str(R2) == str(R)
    X = projective_line()
    Y = wio.scheme_from_dict(json.loads(wio.dumps(wio.scheme_to_dict(X))))
    assert wio.scheme_to_dict(Y) == wio.scheme_to_dict(X)


def test_parse_base():
    assert wio.parse_base("Z") == ZZ and str(wio.parse_base("Z/8")) == "Z/8"
    assert str(wio.parse_base("Z[1/2,3]")) == "Z[1/2,3]"
    assert str(wio.parse_base({"kind": "mod", "m": 4})) == "Z/4"
    for bad in ("Q", "Z/1", "Z[1/4]"):
        with pytest.raises(ParseError):
            wio.parse_base(bad)


def test_ghost_dict_reparses():
    W = WittCtx(2, 2, Z)
    g = W.ghost(W.vec([1, 2, 3]))
    assert wio.witt_from_dict(json.loads(wio.dumps(wio.ghost_to_dict(g)))) == g


def test_coghost_inverse_output_reparses():
    code, d, _ = call_json("jet", "iso-check", "--p", "2", "--n", "1", "--ring", ZX)
    S = Scalar.inverted([2])
    f = parse_poly(d["inverse"]["d1_x"], ("x_0", "x_1"), S)
    assert str(f) == d["inverse"]["d1_x"]
