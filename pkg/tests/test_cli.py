from transversal import formats
from transversal.absorber import parse_template
from transversal.cli import main
from transversal.generators import extremal_instance
from transversal.graph import Graph, GraphCollection
from transversal.solver import parse_embedding, verify_transversal


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_gen_and_solve(tmp_path, capsys):
    coll = str(tmp_path / "coll.txt")
    tgt = str(tmp_path / "c6.txt")
    assert main(["gen", "--n", "6", "--delta-frac", "1/2", "--seed", "3", "--out", coll]) == 0
    assert main(["gen", "--n", "6", "--target", "hamilton_cycle", "--out", tgt]) == 0
    assert "bandwidth=2" in open(tgt).read()
    capsys.readouterr()
    assert main(["solve", coll, tgt]) == 0
    out = capsys.readouterr().out
    assert "outcome: found" in out and "verified: yes" in out
    emb = parse_embedding(out)
    assert verify_transversal(formats.read_collection(coll), formats.read_target(tgt)[0], emb)[0]


def test_solve_exit_codes(tmp_path, capsys):
    inst = extremal_instance("kpartite-factor", 9, 3)
    coll = write(tmp_path, "coll.txt", formats.format_collection(inst.collection))
    tgt = write(tmp_path, "tgt.txt", formats.format_target(inst.target))
    assert main(["solve", coll, tgt]) == 1
    assert main(["solve", coll, tgt, "--node-budget", "3"]) == 2
    assert main(["solve", coll, tgt, "--seeds", "0,1"]) == 1
    assert main(["solve", coll, str(tmp_path / "missing.txt")]) == 3
    assert "budget-exhausted" in capsys.readouterr().out


def test_config_file(tmp_path, capsys):
    inst = extremal_instance("kpartite-factor", 9, 3)
    coll = write(tmp_path, "coll.txt", formats.format_collection(inst.collection))
    tgt = write(tmp_path, "tgt.txt", formats.format_target(inst.target))
    cfg = write(tmp_path, "run.cfg", "# budgets\nnode-budget = 3\nno_symmetry = yes\n")
    assert main(["--config", cfg, "solve", coll, tgt]) == 2
    assert main(["--config", cfg, "solve", coll, tgt, "--node-budget", "10000000"]) == 1
    bad = write(tmp_path, "bad.cfg", "colour = 3\n")
    assert main(["--config", bad, "solve", coll, tgt]) == 3
    capsys.readouterr()


def test_sweep(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("TRANSVERSAL_THREADS", "2")
    out = tmp_path / "s.csv"
    args = ["sweep", "--n", "5,6", "--delta", "1/2,2/3", "--trials", "3", "--no-timing", "--gnuplot", str(tmp_path / "s")]
    assert main(args + ["--out", str(out)]) == 0
    assert main(args) == 0
    assert capsys.readouterr().out == out.read_text()
    assert (tmp_path / "s.gp").exists()
    assert main(["sweep", "--extremal", "dirac-hamilton", "--n", "8", "--no-timing"]) == 0
    assert ",1,0,1,0,NA," in capsys.readouterr().out


def test_check(tmp_path, capsys):
    g = Graph.from_edges(12, [(a, b) for a in range(4) for b in range(4, 8)])
    path = write(tmp_path, "g.txt", formats.format_target(g))
    assert main(["check", "--graph", path, "--a", "0,1,2,3", "--b", "4,5,6,7,8,9,10,11"]) == 0
    out = capsys.readouterr().out
    assert "exact_regular: no" in out and "density: 1/2" in out


def test_absorber(tmp_path, capsys):
    coll = GraphCollection.identical(Graph.complete(4), 6)
    path = write(tmp_path, "coll.txt", formats.format_collection(coll))
    assert main(["absorber", path, "--edges", "0-1,2-3", "--ell", "1", "--c-size", "3"]) == 0
    tpl = parse_template(capsys.readouterr().out)
    c = min(tpl.c)
    assert main(["absorber", path, "--edges", "0-1,2-3", "--ell", "1", "--c-size", "3", "--absorb", str(c)]) == 0
    assert "lambda:" in capsys.readouterr().out
    assert main(["absorber", path, "--edges", "0-1,2-3", "--ell", "1", "--c-size", "9"]) == 3


def test_extremal(tmp_path, capsys):
    coll = str(tmp_path / "c.txt")
    assert main(["extremal", "dirac-hamilton", "--n", "8", "--solve", "--out-collection", coll]) == 1
    out = capsys.readouterr().out
    assert "outcome: not-found" in out and "K_{3,5}" in out
    assert formats.read_collection(coll).layers[0] == Graph.complete_multipartite([3, 5])
    assert main(["extremal", "space-barrier-triangle"]) == 0
    assert main(["extremal", "kpartite-factor", "--n", "8"]) == 3
