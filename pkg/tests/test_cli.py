import json
import subprocess
import sys

import pytest

from vimc.cli import main
from vimc.errors import InvalidVertexError, ParseError
from vimc.graph import Graph, joined_stars
from vimc.io import format_graph, parse_graph, read_formula, read_graph, write_graph
from vimc.testkit import GeneratorParams, random_formula, random_graph_with_separator
from vimc.io import write_formula


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    report = json.loads(out) if code == 0 else None
    return code, report, err


@pytest.fixture
def files(tmp_path, apex_graph):
    paths = {}
    for name, g in {"stars": joined_stars(3), "apex": apex_graph, "k5": Graph.complete(5),
                    "e5": Graph.empty(5), "k4": Graph.complete(4), "p4": Graph.path(4), "c5": Graph.cycle(5),
                    "g1": Graph(1)}.items():
        paths[name] = tmp_path / f"{name}.graph"
        write_graph(paths[name], g)
    for name, text in {"edge": "exists x1. exists x2. x1 ~ x2", "refl": "forall x1. x1 = x1",
                       "open": "exists x1. x1 ~ x2", "bad": "exists x1. (x1 ~ x1",
                       "mso": "exists X1. forall x1. x1 in X1"}.items():
        paths[name] = tmp_path / f"{name}.formula"
        paths[name].write_text(text + "\n")
    return paths


def test_graph_format_round_trip():
    text = "# a comment\ngraph 4\n0 1\n0 3\n2 3\n"
    assert format_graph(parse_graph(text), ["a comment"]) == text
    assert parse_graph("graph 3\n2 0\n").sorted_edges() == [(0, 2)]


@pytest.mark.parametrize(
    "text, err",
    [("graph 3\n0 1\n1 0\n", ParseError), ("graph 3\n0 3\n", InvalidVertexError), ("0 1\n", ParseError),
     ("graph 2\n0 x\n", ParseError), ("", ParseError), ("graph 2\n1 1\n", ParseError)],
)
def test_graph_format_errors(text, err):
    with pytest.raises(err):
        parse_graph(text)


@pytest.mark.parametrize("name, k", [("stars", 3), ("e5", 1), ("k5", 5), ("p4", 3)])
def test_vi(capsys, files, name, k):
    code, rep, _ = run(capsys, "vi", files[name])
    assert code == 0 and rep["integrity"] == k
    assert set(rep) == {"command", "inputs", "verdict", "integrity", "separator", "kernel", "value", "elapsed_ms"}


def test_vi_separator_is_lexicographically_first(capsys, files):
    assert run(capsys, "vi", files["stars"])[1]["separator"] == [0, 4]


@pytest.mark.parametrize("mode", ["naive", "kernel", "auto"])
def test_check_modes(capsys, files, mode):
    code, rep, _ = run(capsys, "check", files["apex"], files["edge"], "--mode", mode)
    assert code == 0 and rep["verdict"] is True
    if mode != "naive":
        assert rep["kernel"]["removed_vertices"] == 16


def test_check_with_given_separator(capsys, files):
    code, rep, _ = run(capsys, "check", files["apex"], files["edge"], "--mode", "kernel", "--separator", "0")
    assert code == 0 and rep["separator"] == [0] and rep["integrity"] is None


def test_check_reflexive_true(capsys, files):
    for g in ("k5", "e5", "g1"):
        assert run(capsys, "check", files[g], files["refl"])[1]["verdict"] is True


def test_false_verdict_still_exit_zero(capsys, files):
    code, rep, _ = run(capsys, "check", files["e5"], files["edge"])
    assert code == 0 and rep["verdict"] is False


def test_input_errors(capsys, files, tmp_path):
    assert run(capsys, "check", files["k5"], files["bad"])[0] == 2
    assert run(capsys, "check", files["k5"], files["open"])[0] == 2
    assert run(capsys, "check", files["k5"], files["edge"], "--separator", "9")[0] == 2
    assert run(capsys, "vi", tmp_path / "missing.graph")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["check", str(files["k5"]), str(files["edge"]), "--separator", "a,b"])
    assert info.value.code == 2


def test_capacity_errors(capsys, files):
    code, _, err = run(capsys, "check", files["k5"], files["mso"], "--mode", "naive", "--set-quantifier-cap", "3")
    assert code == 3 and "kernel" in err
    assert run(capsys, "vi", files["k5"], "--limit", "4")[0] == 3


def test_kernel_command(capsys, files, tmp_path):
    out = tmp_path / "kernel.graph"
    code, rep, _ = run(capsys, "kernel", files["apex"], files["edge"], "-o", out)
    assert code == 0 and rep["value"]["kernel_vertices"] == 5
    assert read_graph(out).n == 5
    code, rep, _ = run(capsys, "kernel", files["apex"], "--q1", "2", "--q2", "1", "--separator", "0")
    assert rep["kernel"]["keep_limit"] == 8 and rep["value"]["kernel_vertices"] == 17
    assert run(capsys, "kernel", files["apex"])[0] == 2


def test_construct_command(capsys, files, tmp_path):
    d = tmp_path / "h"
    code, rep, _ = run(capsys, "construct", files["c5"], "--emit-dir", d, "--q", 3, "--three-col")
    assert code == 0 and rep["value"]["k"] == 2
    meta = json.loads((d / "h.meta.json").read_text())
    assert meta["roles"].count("S") == 4
    assert meta["roles"].count("W") == 10
    assert meta["census"]["max_component_size"] == 19
    h = read_graph(d / "h.graph")
    assert h.n == rep["value"]["vertices"] == 5 * 4 + 5 * 19 + 4
    for name in ("phi_adj.formula", "phi_clique_3.formula", "phi_col.formula"):
        text = (d / name).read_text()
        assert text.startswith("# ")
        read_formula(d / name)
    # emitted files are reproduced exactly when re-printed
    assert format_graph(h, ["H(G) for c5.graph, k=2"]) == (d / "h.graph").read_text()
    assert run(capsys, "construct", files["g1"], "--emit-dir", d)[0] == 2


@pytest.mark.parametrize(
    "argv, verdict, value",
    [(("clique", "k4", "--q", "4"), True, None), (("3col", "k4"), False, None), (("vc", "p4"), None, 2)],
)
def test_oracle(capsys, files, argv, verdict, value):
    code, rep, _ = run(capsys, "oracle", argv[0], files[argv[1]], *argv[2:])
    assert code == 0 and rep["verdict"] == verdict and rep["value"] == value


def test_generate(capsys, tmp_path):
    d = tmp_path / "gen"
    code, rep, _ = run(capsys, "generate", "--seed", 11, "--emit-dir", d, "--q2", 1)
    assert code == 0
    g = read_graph(d / "graph.graph")
    f = read_formula(d / "formula.formula")
    p = GeneratorParams(11, 12, 2, 2, 2, (2, 1, 4))
    assert (g, f) == (random_graph_with_separator(p)[0], random_formula(p))


@pytest.mark.parametrize("seed", range(30))
def test_modes_agree(capsys, tmp_path, seed):
    p = GeneratorParams(seed, 14, 2, 2, 2, (3, seed % 2, 5))
    g, sep = random_graph_with_separator(p)
    write_graph(tmp_path / "g.graph", g)
    write_formula(tmp_path / "f.formula", random_formula(p))
    verdicts = set()
    for mode in ("naive", "kernel", "auto"):
        verdicts.add(run(capsys, "check", tmp_path / "g.graph", tmp_path / "f.formula", "--mode", mode)[1]["verdict"])
    sep_arg = ",".join(map(str, sep.s))
    verdicts.add(run(capsys, "check", tmp_path / "g.graph", tmp_path / "f.formula", "--mode", "kernel",
                     "--separator", sep_arg)[1]["verdict"])
    assert len(verdicts) == 1


def test_console_entry_point(files):
    out = subprocess.run([sys.executable, "-m", "vimc", "vi", str(files["stars"])], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["integrity"] == 3
