import csv
import io
import json
import math

import numpy as np
import pytest

from locinv.cli import deserialize_witness, main, serialize_witness, verdict_json
from locinv.local import LocalUnitary
from locinv.pauli import parse_hamiltonian
from locinv.algebraic import verify_inversion
from locinv.pipeline import decide


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_check_type1():
    code, d = run_json("check", "--h", "zz", "--n", "2")
    assert code == 0 and d["classification"] == "type1" and d["schema"] == 1
    K = deserialize_witness(d["witness"])
    assert verify_inversion(parse_hamiltonian("zz", 2), K) < 1e-12


def test_check_certified_not():
    code, d = run_json("check", "--h", "xx+yy+zz", "--n", "2")
    assert code == 4 and d["classification"] == "certified_not_type1"


def test_check_type2():
    code, d = run_json("check", "--h", "z1+1z+zz", "--n", "2", "--tau", repr(math.pi / 4))
    assert code == 2 and d["classification"] == "type2"
    assert set(d["witness"]) == {"k1", "k2"}


def test_check_tau_pi_fraction_and_infer_n():
    code, d = run_json("check", "--h", "0.5z1+0.5*1z+0.5zz", "--tau-pi-frac", "1/4")
    assert code == 2 and d["diagnostics"]["tau"] == pytest.approx(math.pi / 4)


def test_check_file_input(tmp_path):
    p = tmp_path / "h.txt"
    p.write_text("xx+yy\n")
    code, d = run_json("check", "--file", str(p), "--n", "2")
    assert code == 0 and d["classification"] == "type1"


def test_parse_error_exit(capsys):
    code, _ = run("check", "--h", "zq", "--n", "2")
    assert code == 1
    assert "position 1" in capsys.readouterr().err


def _graph(tmp_path, text):
    p = tmp_path / "g.txt"
    p.write_text(text)
    return str(p)


def test_graph_c4_zz(tmp_path):
    f = _graph(tmp_path, "1 2 zz 1\n2 3 zz 1\n3 4 zz 1\n4 1 zz 1\n")
    code, d = run_json("graph", "--file", f)
    assert code == 0 and d["classification"] == "type1"
    assert d["diagnostics"]["coloring"] == [[1, 3], [2, 4]]


def test_graph_c3_zz_with_flow(tmp_path):
    f = _graph(tmp_path, "1 2 zz 1\n2 3 zz 1\n3 1 zz 1\n")
    code, d = run_json("graph", "--file", f, "--flow", "--restarts", "4")
    assert code == 4 and d["method"] == "odd_cycle"
    assert sorted(d["diagnostics"]["odd_cycle"]) == [1, 2, 3]
    assert d["diagnostics"]["flow_concurs"] is True


def test_graph_c3_xmx(tmp_path):
    f = _graph(tmp_path, "1 2 xmx 1\n2 3 xmx 1\n1 3 xmx 1\n")
    code, d = run_json("graph", "--file", f)
    assert code == 0 and d["method"] == "joint z pi/2"


def test_order_weyl():
    code, text = run("order", "--i", "8", "--j", "15", "--n", "4")
    assert code == 0
    assert "p=0" in text and "not joint-z invertible; individually z-invertible" in text


def test_order_hamiltonian():
    code, d = run_json("order", "--h", "xx-yy", "--n", "2", "--json")
    assert code == 0 and d["joint_z"] == "pi/2"


def test_order_diagonal_index(capsys):
    code, _ = run("order", "--i", "1", "--j", "1", "--n", "2")
    assert code == 1 and "DiagonalIndex" in capsys.readouterr().err


def test_cartan_rows():
    # the AII label of zz is checked (and known to differ) in the acceptance suite
    text = run("cartan", "--h", "zz", "--n", "2")[1].strip()
    assert text.startswith("CC:p AI:p AII:") and text.endswith("AIII:k; type-I:+")
    _, text = run("cartan", "--h", "xxx+yyy+zzz", "--n", "3")
    assert text.strip() == "CC:k AI:mixed AII:k AIII:mixed; type-I:+"
    _, text = run("cartan", "--h", "xx+yy+zz", "--n", "2")
    assert text.strip().endswith("type-I:-")


def test_corpus_json():
    code, rows = run_json("corpus", "--json", "--restarts", "4")
    assert code == 0 and len(rows) == 11
    r1 = rows[0]
    assert r1["spectrum_paired"] and r1["double_commutator"] and r1["local_orthocomplement"] and r1["type1"]
    assert rows[6]["classification"] == "certified_not_type1"
    assert "type1" in rows[9]


def test_trace_command(tmp_path):
    p = tmp_path / "t.csv"
    code, d = run_json("trace", "--h", "zz1+1zz+z1z", "--n", "3", "--trace", str(p),
                       "--restarts", "2", "--max-iter", "300")
    assert code == 0 and d["verdict"] == "no_witness_found"
    rows = list(csv.reader(open(p)))
    assert rows[0] == ["restart", "iteration", "overlap"] and len(rows) > 2


def test_trace_requires_path():
    assert run("trace", "--h", "zz", "--n", "2")[0] == 1


def test_witness_json_round_trip(rng):
    k = LocalUnitary.random(3, rng)
    back = deserialize_witness(json.loads(json.dumps(serialize_witness(k))))
    assert np.allclose(back.full(), k.full(), atol=1e-14)
    pair = (LocalUnitary.random(2, rng), LocalUnitary.random(2, rng))
    b1, b2 = deserialize_witness(json.loads(json.dumps(serialize_witness(pair))))
    assert np.allclose(b1.full(), pair[0].full()) and np.allclose(b2.full(), pair[1].full())


def test_verdict_json_floats_round_trip():
    c = decide(parse_hamiltonian("xx+yy", 2))
    d = verdict_json(c)
    K = deserialize_witness(json.loads(json.dumps(d))["witness"])
    assert np.allclose(K.full(), c.witness.full(), atol=1e-15)


def test_bad_command():
    assert run("nonsense")[0] == 1
