import json

import pytest

from ilatpg.cli import main

FIG4 = {"h": 2, "v": 1, "table": [1, 0, 3, 7, 6, 4, 5, 2]}


@pytest.fixture
def fig4_spec(tmp_path):
    path = tmp_path / "fig4.json"
    path.write_text(json.dumps(FIG4))
    return str(path)


def test_check_fig4(fig4_spec, capsys):
    assert main(["check", fig4_spec]) == 0
    out = capsys.readouterr().out
    assert "bijective; state cycles: 2,3,3; X degrees 2/2 OK; Y degrees 4/4 OK" in out


def test_check_duplicate(tmp_path, capsys):
    path = tmp_path / "dup.json"
    path.write_text(json.dumps({"h": 1, "v": 1, "table": [0, 0, 1, 2]}))
    assert main(["check", str(path)]) == 1
    assert "not bijective" in capsys.readouterr().err


def test_check_missing_file(tmp_path):
    assert main(["check", str(tmp_path / "nope.json")]) == 1


def test_check_netlist_same_as_table(tmp_path, capsys):
    net = {"h": 2, "v": 1, "netlist": {"gates": [{"controls": [0, 1], "target": 2}]}}
    tab = {"h": 2, "v": 1, "table": [0, 1, 2, 3, 4, 5, 7, 6]}
    outs = []
    for name, spec in [("n.json", net), ("t.json", tab)]:
        path = tmp_path / name
        path.write_text(json.dumps(spec))
        assert main(["check", str(path)]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_diagram(fig4_spec, tmp_path):
    out = tmp_path / "s.dot"
    assert main(["diagram", fig4_spec, "--kind", "state", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.count(" -> ") == 8 and text.count("[label=\"s") == 8
    assert main(["diagram", fig4_spec, "--kind", "state", "--out", str(tmp_path / "b.dot")]) == 0
    assert (tmp_path / "b.dot").read_text() == text
    assert main(["diagram", fig4_spec, "--kind", "x", "--out", str(out)]) == 0
    assert out.read_text().count("[label=\"h") == 4
    assert main(["diagram", fig4_spec, "--kind", "w"]) == 1


def _gen(spec, tmp_path, *args):
    out = tmp_path / "ts.json"
    code = main(["gen", spec, *args, "--out", str(out)])
    return code, (json.loads(out.read_text()) if code == 0 else None), str(out)


def test_gen_2d_atpg(fig4_spec, tmp_path):
    code, data, _ = _gen(fig4_spec, tmp_path, "--dims", "2", "--sizes", "4", "4", "--method", "atpg")
    assert code == 0 and len(data["vectors"]) == 8 and data["method"] == "ATPG2D"


def test_gen_1d_euler(fig4_spec, tmp_path):
    code, data, _ = _gen(fig4_spec, tmp_path, "--dims", "1", "--sizes", "8", "--method", "euler")
    assert code == 0 and data["method"] == "Euler1D"
    assert len(data["vectors"]) == 8
    constant = [v for v in data["vectors"] if len(set(v["cells"])) == 1]
    assert len(constant) == 3  # canonical pairing keeps three self-loops


def test_gen_decomp_index_reproduces_1d_example(fig4_spec, tmp_path):
    # index 3 in lexicographic order is the (q1,1)<->(q3,1), (q3,0)<->(q2,0) pairing
    code, data, _ = _gen(fig4_spec, tmp_path, "--sizes", "6", "--decomp-index", "3")
    assert code == 0
    assert data["decomposition"]["H"] == [0, 1, 2, 7, 6, 5, 4, 3]


def test_gen_2d_euler_search(fig4_spec, tmp_path):
    code, data, path = _gen(fig4_spec, tmp_path, "--dims", "2", "--sizes", "3", "3", "--method", "euler")
    assert code == 0 and data["method"] == "Euler2D" and len(data["vectors"]) == 8
    assert main(["verify", fig4_spec, path]) == 0


def test_gen_2d_euler_infeasible_index(fig4_spec, tmp_path):
    code, _, _ = _gen(fig4_spec, tmp_path, "--dims", "2", "--sizes", "3", "3",
                      "--method", "euler", "--decomp-index", "3")
    assert code == 2


def test_gen_over_limit(fig4_spec, tmp_path, monkeypatch):
    monkeypatch.setenv("ILA_ENUM_LIMIT", "10")
    code, _, _ = _gen(fig4_spec, tmp_path, "--dims", "2", "--sizes", "3", "3", "--method", "euler")
    assert code == 2
    code, _, _ = _gen(fig4_spec, tmp_path, "--dims", "2", "--sizes", "3", "3",
                      "--method", "euler", "--limit", "100")
    assert code == 0


@pytest.mark.parametrize(
    "args",
    [
        ["--sizes", "0"],
        ["--dims", "2", "--sizes", "3"],
        ["--dims", "3", "--sizes", "2", "2", "2"],
        ["--dims", "3", "--sizes", "2", "2", "2", "--widths", "1", "1", "2"],
        ["--dims", "3", "--sizes", "2", "2", "2", "--widths", "1", "1", "1", "--method", "euler"],
    ],
)
def test_gen_validation_errors(fig4_spec, tmp_path, args):
    assert _gen(fig4_spec, tmp_path, *args)[0] == 1


def test_gen_nd(fig4_spec, tmp_path):
    code, data, path = _gen(fig4_spec, tmp_path, "--dims", "3", "--sizes", "2", "3", "2",
                            "--widths", "1", "1", "1")
    assert code == 0 and data["method"] == "ATPG_nD"
    assert main(["verify", fig4_spec, path, "--summary"]) == 0


def test_gen_pretty(fig4_spec, tmp_path):
    code, data, _ = _gen(fig4_spec, tmp_path, "--dims", "2", "--sizes", "2", "2", "--pretty")
    assert code == 0 and data["vectors"][0]["cells"][0][0] == "00/0"


def test_gen_byte_stable(fig4_spec, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for out in (a, b):
        assert main(["gen", fig4_spec, "--dims", "2", "--sizes", "3", "4", "--out", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_pass_and_report(fig4_spec, tmp_path, capsys):
    code, _, path = _gen(fig4_spec, tmp_path, "--dims", "2", "--sizes", "5", "5")
    report = tmp_path / "r.json"
    capsys.readouterr()
    assert main(["verify", fig4_spec, path, "--random-trials", "200", "--seed", "3",
                 "--report", str(report), "--summary"]) == 0
    line = capsys.readouterr().out.strip()
    assert line.startswith("PASS") and "1400/1400" in line
    data = json.loads(report.read_text())
    assert data["atomic"]["passed"] and data["sampled"]["total"] == 200


def test_verify_dropped_vector(fig4_spec, tmp_path, capsys):
    code, data, path = _gen(fig4_spec, tmp_path, "--dims", "2", "--sizes", "3", "3")
    data["vectors"].pop(2)
    with open(path, "w") as fh:
        json.dump(data, fh)
    capsys.readouterr()
    assert main(["verify", fig4_spec, path]) == 3
    assert "undetected" in capsys.readouterr().out


def test_verify_wrong_cell(fig4_spec, tmp_path):
    _, _, path = _gen(fig4_spec, tmp_path, "--dims", "2", "--sizes", "2", "2")
    other = tmp_path / "other.json"
    assert main(["random-cell", "2", "1", "--seed", "5", "--out", str(other)]) == 0
    assert main(["verify", str(other), path]) == 1


def test_verify_garbage_testset(fig4_spec, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert main(["verify", fig4_spec, str(bad)]) == 1


def test_random_cell_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["random-cell", "2", "1", "--seed", "1", "--out", str(a)]) == 0
    assert main(["random-cell", "2", "1", "--seed", "1", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert main(["check", str(a)]) == 0
    assert main(["random-cell", "7", "7"]) == 1


def test_random_cells_full_pipeline(tmp_path, capsys):
    shapes = [(1, 1), (2, 1), (1, 2), (2, 2)]
    for seed in range(100):
        h, v = shapes[seed % 4]
        spec = tmp_path / "c.json"
        out = tmp_path / "t.json"
        assert main(["random-cell", str(h), str(v), "--seed", str(seed), "--out", str(spec)]) == 0
        dims = 1 + seed % 2
        sizes = ["3"] if dims == 1 else ["2", "3"]
        assert main(["gen", str(spec), "--dims", str(dims), "--sizes", *sizes, "--out", str(out)]) == 0
        assert main(["verify", str(spec), str(out), "--summary"]) == 0
    capsys.readouterr()


def test_no_command():
    assert main([]) == 1
