import csv

import pytest

from multidfa import cli
from multidfa.io import format_sample, read_dfa, write_dfa
from multidfa.automata import LabeledSample

from fixtures import AB, CLUSTER_POSITIVES, three_group_sample, cluster_parent


@pytest.fixture
def files(tmp_path):
    sample = tmp_path / "threegroups.abb"
    sample.write_text(format_sample(three_group_sample()))
    dfa = tmp_path / "cluster_parent.dfa"
    write_dfa(cluster_parent(), dfa)
    pos = tmp_path / "cluster.positives"
    pos.write_text(format_sample(LabeledSample(CLUSTER_POSITIVES, frozenset(), AB)))
    return tmp_path, sample, dfa, pos


def test_rpni_split_three_files(files, capsys):
    tmp, sample, _, _ = files
    out = tmp / "split"
    assert cli.main(["rpni-split", "--sample", str(sample), "--k", "5", "--out-dir", str(out)]) == 0
    made = sorted(out.glob("*.dfa"))
    assert [p.name for p in made] == [f"threegroups.sub{i}.dfa" for i in range(3)]
    for p in made:
        read_dfa(p)


def test_cluster_four_files(files):
    tmp, _, dfa, pos = files
    out = tmp / "cl"
    assert cli.main(["cluster", "--dfa", str(dfa), "--sample", str(pos), "--out-dir", str(out)]) == 0
    assert len(list(out.glob("cluster_parent.sub*.dfa"))) == 4


def test_pta_rpni_dot(files, capsys):
    _, sample, dfa, _ = files
    assert cli.main(["pta", "--sample", str(sample)]) == 0
    assert "states: 21" in capsys.readouterr().out
    assert cli.main(["rpni", "--sample", str(sample)]) == 0
    assert "states: 4" in capsys.readouterr().out
    assert cli.main(["dot", "--dfa", str(dfa)]) == 0
    assert capsys.readouterr().out.startswith("digraph")


def test_missing_file_exit_2(tmp_path, capsys):
    missing = tmp_path / "missing.dfa"
    assert cli.main(["dot", "--dfa", str(missing)]) == 2
    assert str(missing) in capsys.readouterr().err
    assert cli.main(["rpni", "--sample", str(tmp_path / "nope.abb")]) == 2


def test_malformed_file_exit_2(tmp_path):
    bad = tmp_path / "bad.dfa"
    bad.write_text("alphabet: a\nstates: x\n")
    assert cli.main(["dot", "--dfa", str(bad)]) == 2


def test_usage_errors_exit_1(files):
    _, sample, _, _ = files
    assert cli.main([]) == 1
    assert cli.main(["frobnicate"]) == 1
    assert cli.main(["rpni-split", "--sample", str(sample), "--k", "0"]) == 1
    assert cli.main(["rpni", "--sample", str(sample), "--bogus"]) == 1
    assert cli.main(["bench", "--out", "x", "--seeds", "0", "--densities", "1.5"]) == 1


def test_ea_reruns_byte_identical(files):
    tmp, sample, _, _ = files
    outputs = []
    for run in ("r1", "r2"):
        out = tmp / run
        assert cli.main(["ea", "--sample", str(sample), "--k", "3", "--seed", "11",
                         "--pop", "16", "--gens", "10", "--out-dir", str(out)]) == 0
        outputs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    assert outputs[0] == outputs[1]
    assert "threegroups.history.csv" in outputs[0]
    for name in outputs[0]:
        if name.endswith(".dfa"):
            read_dfa(tmp / "r1" / name)


def test_ea_config_file(files):
    tmp, sample, _, _ = files
    cfg = tmp / "ea.cfg"
    cfg.write_text("population_size = 8\nmax_generations = 2\n")
    assert cli.main(["ea", "--sample", str(sample), "--k", "2", "--seed", "1",
                     "--config", str(cfg), "--out-dir", str(tmp / "o")]) == 0
    cfg.write_text("population_size = lots\n")
    assert cli.main(["ea", "--sample", str(sample), "--k", "2", "--seed", "1",
                     "--config", str(cfg), "--out-dir", str(tmp / "o")]) == 2


def test_bench_byte_identical(tmp_path):
    args = ["bench", "--seeds", "0", "--ks", "2", "--densities", "0.1,0.2", "--no-timing"]
    assert cli.main(args + ["--out", str(tmp_path / "a")]) == 0
    assert cli.main(args + ["--out", str(tmp_path / "b"), "--jobs", "2"]) == 0
    for name in ("results.csv", "summary.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    with open(tmp_path / "a" / "results.csv") as fh:
        assert len(list(csv.DictReader(fh))) == 30
