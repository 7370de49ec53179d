import json

import pytest
from conftest import c6_pair

from qpt.bcs import bcs_graph, homogenise, magic_square_solution, magic_square_system, solution_signs_to_automorphisms
from qpt.cli import main
from qpt.cocycles import CentralTypeSubgroup
from qpt.graphs import cycle_graph, graph_to_json, petersen_graph
from qpt.ueb import UnitaryErrorBasis, pauli_basis, tensor_power


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    report = json.loads(out)
    assert report["schema"] == "qpt-report/1"
    return code, report


def dump(path, obj):
    path.write_text(json.dumps(obj))
    return path


def test_analyze_c5(tmp_path, capsys):
    code, rep = run(capsys, "analyze", dump(tmp_path / "c5.json", graph_to_json(cycle_graph(5))))
    assert code == 0
    assert rep["result"]["aut_order"] == 10 and rep["result"]["num_central_type_classes"] == 0


def test_analyze_c8(tmp_path, capsys):
    code, rep = run(capsys, "analyze", dump(tmp_path / "c8.json", graph_to_json(cycle_graph(8))))
    assert code == 0
    central = [c for c in rep["result"]["square_order_classes"] if c["central_type"]]
    z22 = [c for c in central if c["order"] == 4]
    assert len(z22) == 2
    for c in z22:
        for row in c["cocycles"]:
            assert not all(o["coisotropic"] for o in row["orbits"])


def test_analyze_petersen_reports_trivial_stabilisers(tmp_path, capsys):
    code, rep = run(capsys, "analyze", dump(tmp_path / "p.json", graph_to_json(petersen_graph())))
    assert code == 0
    central = [c for c in rep["result"]["square_order_classes"] if c["central_type"]]
    assert len(central) == 2
    assert all(row["trivial_stabilizer_vertices"] for c in central for row in c["cocycles"])


def test_construct_c6(tmp_path, capsys):
    g, pair, _ = c6_pair()
    gf = dump(tmp_path / "g.json", graph_to_json(g))
    sf = dump(tmp_path / "sub.json", {"degree": 6, "elements": pair.elements.tolist()})
    cf = dump(tmp_path / "coc.json", pair.psi.to_json())
    code, rep = run(capsys, "construct", gf, sf, cf)
    assert code == 0
    res = rep["result"]
    assert not res["classical"] and (res["dim"], res["center_dim"]) == (6, 3)


def bms_files(tmp_path):
    f = magic_square_system()
    u = tensor_power(pauli_basis(), 2)
    perms = solution_signs_to_automorphisms(f, magic_square_solution(), u)
    pair = CentralTypeSubgroup(perms, u.cocycle)
    gf = dump(tmp_path / "bms.json", graph_to_json(bcs_graph(homogenise(f)).graph))
    sf = dump(tmp_path / "sub.json", {"generators": perms[[1, 2, 4, 8]].tolist()})
    cf = dump(tmp_path / "coc.json", pair.to_json())
    return gf, sf, cf, u


def test_construct_magic_square(tmp_path, capsys):
    gf, sf, cf, u = bms_files(tmp_path)
    uf = dump(tmp_path / "ueb.json", u.to_json())
    out = tmp_path / "out"
    code, rep = run(capsys, "construct", gf, sf, cf, "--ueb", uf, "--out", out)
    assert code == 0
    res = rep["result"]
    assert res["pseudo_telepathic"] and res["output_graph"]["n"] == 24
    assert (out / "ppm.json").exists() and (out / "output_graph.json").exists() and (out / "report.json").exists()


def test_mismatched_ueb_exits_one(tmp_path, capsys):
    gf, sf, cf, u = bms_files(tmp_path)
    mats = u.matrices.copy()
    mats[1] *= -1
    uf = dump(tmp_path / "ueb.json", UnitaryErrorBasis(u.group, mats).to_json())
    code, rep = run(capsys, "construct", gf, sf, cf, "--ueb", uf)
    assert code == 1 and rep["error"] == "CocycleMismatch"


@pytest.mark.parametrize(
    "text",
    ['{"n":3,"edges":[[0,0]]}', "not json", '{"n":2,"edges":[[0,5]]}'],
)
def test_bad_graph_exits_two(tmp_path, capsys, text):
    p = tmp_path / "bad.json"
    p.write_text(text)
    code, rep = run(capsys, "analyze", p)
    assert code == 2 and rep["status"] == "input error"


def test_missing_file_exits_two(tmp_path, capsys):
    code, _ = run(capsys, "analyze", tmp_path / "nope.json")
    assert code == 2


def test_demo_cycles(capsys):
    code, rep = run(capsys, "demo", "cycles")
    assert code == 0
    rows = {r["n"]: r for r in rep["result"]["table"]}
    assert set(rows) == set(range(5, 13))
    assert rows[6]["outputs"] == [{"structure": rows[6]["outputs"][0]["structure"], "dim": 6, "center_dim": 3, "classical": False}]


def test_no_quantum_symmetries_wording(tmp_path, capsys):
    code, rep = run(capsys, "analyze", dump(tmp_path / "c5.json", graph_to_json(cycle_graph(5))), "--no-quantum-symmetries")
    assert rep["result"]["classification"] == "exhaustive classification"
