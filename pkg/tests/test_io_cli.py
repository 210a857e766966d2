"""Instance files, SVG rendering, and the command-line surface."""

import json
import os

import pytest

from colorislands import InstanceFormatError, verify_island_partition
from colorislands import generators, instance_io, render
from colorislands.cli import main

from conftest import random_planar


def test_instance_roundtrip(tmp_path):
    S = random_planar(3, 3, 3)
    path = tmp_path / "inst.json"
    instance_io.save_instance(path, S, {"k": 3, "n": 3, "seed": 3, "family": "t"})
    S2, meta = instance_io.load_instance(path)
    assert S2.dim == S.dim and S2.m == S.m
    assert [S2.coords(i) for i in S2.ids()] == [S.coords(i) for i in S.ids()]
    assert meta["k"] == 3 and meta["family"] == "t"


def test_rational_strings_and_float_rejection(tmp_path):
    doc = {
        "dim": 2,
        "colors": 2,
        "points": [
            {"x": ["1/3", "-2/7"], "color": 0},
            {"x": ["4", "0"], "color": 1},
        ],
        "meta": {},
    }
    S, _ = instance_io.instance_from_doc(instance_io.loads(json.dumps(doc)))
    assert str(S.coords(0)[0]) == "1/3"
    with pytest.raises(InstanceFormatError):
        instance_io.loads('{"points": [{"x": [1.5, 2], "color": 0}]}')
    bad = dict(doc)
    bad["points"] = [{"x": [1, 2], "color": 0}]  # bare ints are not strings
    with pytest.raises(InstanceFormatError):
        instance_io.instance_from_doc(bad)


def test_gen_determinism(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        code = main(
            [
                "gen", "--family", "random_general_position", "--seed", "7",
                "--k", "3", "--n", "3", "--dim", "2", "--out", str(out),
            ]
        )
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_round_trip_plane(tmp_path):
    inst = tmp_path / "i.json"
    sol = tmp_path / "s.json"
    svg = tmp_path / "p.svg"
    assert main(["gen", "--family", "rings", "--seed", "0", "--out", str(inst)]) == 0
    assert main(["solve", "--mode", "plane", "--in", str(inst), "--out", str(sol)]) == 0
    doc = json.loads(sol.read_text())
    assert doc["verified"] is True and len(doc["parts"]) == 10
    assert main([
        "verify", "--in", str(inst), "--sol", str(sol), "--k", "5", "--j", "2",
    ]) == 0
    assert main(["render", "--in", str(inst), "--sol", str(sol), "--out", str(svg)]) == 0
    text = svg.read_text()
    assert text.count("<polygon") == 10  # one shaded hull per island
    # determinism: rendering again is byte-identical
    svg2 = tmp_path / "p2.svg"
    main(["render", "--in", str(inst), "--sol", str(sol), "--out", str(svg2)])
    assert svg.read_bytes() == svg2.read_bytes()


def test_cli_verify_detects_mutation(tmp_path, capsys):
    inst = tmp_path / "i.json"
    sol = tmp_path / "s.json"
    main(["gen", "--family", "random_general_position", "--seed", "5",
          "--k", "3", "--n", "3", "--dim", "2", "--out", str(inst)])
    main(["solve", "--mode", "plane", "--in", str(inst), "--out", str(sol)])
    doc = json.loads(sol.read_text())
    parts = doc["parts"]
    parts[0][0], parts[1][0] = parts[1][0], parts[0][0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code = main(["verify", "--in", str(inst), "--sol", str(bad), "--k", "3", "--j", "2"])
    assert code == 1
    out = capsys.readouterr().out
    assert "fail" in out and ("hulls intersect" in out or "island" in out)
    # wrong k names the part-size clause
    code = main(["verify", "--in", str(inst), "--sol", str(sol), "--k", "4", "--j", "2"])
    assert code == 1
    assert "part-size: fail" in capsys.readouterr().out


def test_cli_solve_rd_and_hall_and_oracle(tmp_path):
    inst = tmp_path / "r.json"
    assert main(["gen", "--family", "random_general_position", "--seed", "2",
                 "--k", "4", "--n", "2", "--dim", "3", "--m", "3",
                 "--out", str(inst)]) == 0
    sol = tmp_path / "rs.json"
    assert main(["solve", "--mode", "rd", "--in", str(inst), "--out", str(sol)]) == 0
    assert json.loads(sol.read_text())["verified"] is True

    hall_out = tmp_path / "h.json"
    assert main(["solve", "--mode", "hall", "--in", str(inst), "--out", str(hall_out)]) == 0
    hdoc = json.loads(hall_out.read_text())
    assert hdoc["verified"] is True and len(hdoc["parts"]) == 2

    oracle_out = tmp_path / "o.json"
    assert main(["solve", "--mode", "oracle", "--in", str(inst), "--out", str(oracle_out)]) == 0
    odoc = json.loads(oracle_out.read_text())
    assert odoc["status"] == "found" and odoc["verified"] is True


def test_cli_exit_code_2_on_bad_input(tmp_path):
    missing = tmp_path / "nope.json"
    assert main(["solve", "--mode", "plane", "--in", str(missing)]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "colors": 2, "points": [{"x": [0.25, 1], "color": 0}]}')
    assert main(["solve", "--mode", "plane", "--in", str(bad)]) == 2
    # precondition violation: plane mode on a 3-color instance
    inst = tmp_path / "i3.json"
    main(["gen", "--family", "random_general_position", "--seed", "2",
          "--k", "4", "--n", "2", "--dim", "3", "--m", "3", "--out", str(inst)])
    assert main(["solve", "--mode", "plane", "--in", str(inst)]) == 2


def test_cli_scan(tmp_path, capsys):
    inst = tmp_path / "i.json"
    main(["gen", "--family", "random_general_position", "--seed", "4",
          "--k", "3", "--n", "3", "--dim", "2", "--out", str(inst)])
    assert main(["scan", "--conjecture", "--in", str(inst)]) == 0
    out = capsys.readouterr().out
    assert "hall_feasible=True" in out and "0 candidates" in out


def test_env_node_limit(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("ISLANDS_NODE_LIMIT", "1")
    inst = tmp_path / "i.json"
    main(["gen", "--family", "random_general_position", "--seed", "6",
          "--k", "3", "--n", "4", "--dim", "2", "--out", str(inst)])
    capsys.readouterr()
    assert main(["solve", "--mode", "oracle", "--in", str(inst)]) == 0
    out = capsys.readouterr().out
    assert "budget_exceeded" in out


def test_render_projections_for_3d(tmp_path):
    S = generators.random_general_position(8, 3, (3, 3, 2))
    text = render.render_svg(S)
    assert text.count("<g id=") == 3  # xy, xz, yz panels
    with pytest.raises(Exception):
        render.render_svg(generators.random_general_position(1, 4, (3, 3, 3, 3)))


def test_tightness_gen_family(tmp_path):
    inst = tmp_path / "t.json"
    assert main(["gen", "--family", "tightness", "--dim", "3", "--variant",
                 "k_equals_d", "--n", "5", "--seed", "1", "--out", str(inst)]) == 0
    S, meta = instance_io.load_instance(inst)
    assert S.sizes() == (3, 3, 3, 3, 3)
    assert meta["k"] == 3 and meta["variant"] == "k_equals_d"
