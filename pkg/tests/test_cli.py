import json

import pytest

from coloursym.cli import main
from coloursym.graphs import ColouredGraph, random_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


# -- gen-random ---------------------------------------------------------------


def test_gen_random_writes_graph(tmp_path, capsys):
    path = tmp_path / "g.json"
    code, out, _ = run(capsys, "gen-random", "--n", "6", "--m", "3", "--seed", "5",
                       "--out", str(path))
    assert code == 0
    assert "graph-written" in out
    G = ColouredGraph.from_json(path.read_text())
    assert G == random_graph(6, 3, 5)


def test_gen_random_empty_graph(tmp_path, capsys):
    path = tmp_path / "empty.json"
    code, _, _ = run(capsys, "gen-random", "--n", "0", "--m", "2", "--out", str(path))
    assert code == 0
    assert json.loads(path.read_text())["colours"] == []


def test_gen_random_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "gen-random", "--n", "12", "--m", "4", "--seed", "9", "--out", str(a))
    run(capsys, "gen-random", "--n", "12", "--m", "4", "--seed", "9", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_gen_random_dot_export(tmp_path, capsys):
    path, dot = tmp_path / "g.json", tmp_path / "g.dot"
    code, _, _ = run(capsys, "gen-random", "--n", "3", "--m", "2",
                     "--out", str(path), "--dot", str(dot))
    assert code == 0
    assert "color_index=" in dot.read_text()


def test_gen_random_rejects_bad_palette(tmp_path, capsys):
    code, _, err = run(capsys, "gen-random", "--n", "3", "--m", "1",
                       "--out", str(tmp_path / "g.json"))
    assert code == 2
    assert "error" in err


# -- complement ----------------------------------------------------------------


def test_complement_m3_passes(capsys):
    code, doc = run_json(capsys, "complement", "--m", "3", "--orbits", "2")
    assert code == 0
    assert doc["passed"]
    names = {a["name"]: a for a in doc["assertions"]}
    assert names["all-elements-consistent"]["passed"]
    assert names["kernel-trivial"]["passed"]


def test_complement_m2_verifies_obstruction(capsys):
    code, doc = run_json(capsys, "complement", "--m", "2")
    assert code == 0
    names = {a["name"]: a for a in doc["assertions"]}
    assert names["obstruction-witness"]["passed"]
    assert "(1 2)" in names["obstruction-witness"]["detail"]
    assert names["no-consistent-fpf-involution"]["passed"]


def test_complement_m4_verifies_obstruction(capsys):
    code, doc = run_json(capsys, "complement", "--m", "4")
    assert code == 0
    assert doc["passed"]


def test_complement_writes_assembled_graph(tmp_path, capsys):
    path = tmp_path / "orbit.json"
    code, _, _ = run(capsys, "complement", "--m", "3", "--orbits", "2",
                     "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["graph"]["n"] == 12
    assert len(doc["vertex_labels"]) == 12


# -- supplement -----------------------------------------------------------------


def test_supplement_m2_tilde_passes(capsys):
    code, doc = run_json(capsys, "supplement", "--m", "2", "--cover", "tilde",
                         "--orbits", "2")
    assert code == 0
    names = {a["name"]: a for a in doc["assertions"]}
    assert names["kernel-order-two"]["passed"]
    assert names["kernel-is-centre"]["passed"]


def test_supplement_m2_hat_fails_with_citation(capsys):
    code, doc = run_json(capsys, "supplement", "--m", "2", "--cover", "hat")
    assert code == 1
    names = {a["name"]: a for a in doc["assertions"]}
    assert not names["supplement-condition"]["passed"]
    assert "(1 2)" in names["supplement-condition"]["detail"]


def test_supplement_m6_tilde_fails_citing_triple_transposition(capsys):
    code, doc = run_json(capsys, "supplement", "--m", "6", "--cover", "tilde")
    assert code == 1
    detail = {a["name"]: a for a in doc["assertions"]}["supplement-condition"]["detail"]
    assert detail.count("(") == 3  # a (2,2,2) involution is cited


def test_supplement_m8_reports_both_covers_blocked(capsys):
    code, doc = run_json(capsys, "supplement", "--m", "8", "--cover", "tilde")
    assert code == 1
    names = {a["name"]: a for a in doc["assertions"]}
    assert not names["supplement-condition-tilde"]["passed"]
    assert not names["supplement-condition-hat"]["passed"]
    assert not names["both-covers-blocked"]["passed"]


# -- cover-table -----------------------------------------------------------------


def test_cover_table_m4(capsys):
    code, doc = run_json(capsys, "cover-table", "--m", "4", "--cover", "tilde")
    assert code == 0
    names = {a["name"]: a for a in doc["assertions"]}
    assert names["order-rule-r1"]["passed"]
    assert names["order-rule-r2"]["passed"]


def test_cover_table_m8_direct_notes_open_case(capsys):
    code, doc = run_json(capsys, "cover-table", "--m", "8", "--cover", "hat",
                         "--direct")
    assert code == 0
    names = {a["name"]: a for a in doc["assertions"]}
    assert "no supplement" in names["supplement-note"]["detail"]


# -- saturate and obstruction ------------------------------------------------------


def test_saturate_roundtrip(tmp_path, capsys):
    src, dst = tmp_path / "in.json", tmp_path / "out.json"
    run(capsys, "gen-random", "--n", "3", "--m", "3", "--seed", "3", "--out", str(src))
    code, doc = run_json(capsys, "saturate", "--in", str(src), "--k", "2",
                         "--seed", "3", "--rounds", "8", "--out", str(dst))
    assert code == 0
    names = {a["name"]: a for a in doc["assertions"]}
    assert names["achieved"]["passed"]
    assert names["witness-sweep"]["passed"]
    G = ColouredGraph.from_json(dst.read_text())
    assert G.n > 3


def test_saturate_honest_failure_on_low_rounds(tmp_path, capsys):
    src, dst = tmp_path / "in.json", tmp_path / "out.json"
    run(capsys, "gen-random", "--n", "2", "--m", "3", "--seed", "0", "--out", str(src))
    code, doc = run_json(capsys, "saturate", "--in", str(src), "--k", "2",
                         "--rounds", "1", "--out", str(dst))
    assert code == 1
    assert not doc["passed"]


def test_obstruction_command(tmp_path, capsys):
    src = tmp_path / "g.json"
    run(capsys, "gen-random", "--n", "5", "--m", "2", "--seed", "1", "--out", str(src))
    code, doc = run_json(capsys, "obstruction", "--in", str(src))
    assert code == 0
    assert doc["passed"]


def test_obstruction_rejects_odd_palette(tmp_path, capsys):
    src = tmp_path / "g.json"
    run(capsys, "gen-random", "--n", "4", "--m", "3", "--seed", "1", "--out", str(src))
    code, _, err = run(capsys, "obstruction", "--in", str(src))
    assert code == 2
    assert "error" in err


# -- coset-bound ---------------------------------------------------------------------


def test_coset_bound_sweep(capsys):
    code, doc = run_json(capsys, "coset-bound")
    assert code == 0
    names = {a["name"]: a for a in doc["assertions"]}
    assert names["bound-sweep"]["passed"]
    assert names["k1-fails"]["passed"]


def test_coset_bound_single(capsys):
    code, doc = run_json(capsys, "coset-bound", "--m", "3", "--k", "2")
    assert code == 0


# -- report determinism -----------------------------------------------------------------


def strip_time(doc: dict) -> dict:
    doc = dict(doc)
    doc.pop("wall_time_s")
    return doc


def test_reports_deterministic_modulo_wall_time(capsys):
    _, doc1 = run_json(capsys, "complement", "--m", "3", "--seed", "7")
    _, doc2 = run_json(capsys, "complement", "--m", "3", "--seed", "7")
    assert strip_time(doc1) == strip_time(doc2)
    _, doc3 = run_json(capsys, "complement", "--m", "3", "--seed", "8")
    assert strip_time(doc1) != strip_time(doc3)


def test_text_report_has_verdict_lines(capsys):
    code, out, _ = run(capsys, "complement", "--m", "3")
    assert code == 0
    assert "[PASS] all-elements-consistent" in out
    assert out.strip().endswith(")")
    assert "result: PASS" in out
