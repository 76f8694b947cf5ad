import json
import math
import subprocess
import sys

import numpy as np
import pytest

from conftest import random_extended
from topodist import AngleSet, DistanceConfig, ExtendedDiagram, compute_distance, make_angle_set
from topodist.cli import main
from topodist.errors import DiagramValidationError, ParseError
from topodist.harness import distance_matrix
from topodist.io import read_diagram, read_labels, read_matrix, write_diagram, write_matrix

E = ExtendedDiagram.from_mapping


def _write(path, text):
    path.write_text(text)
    return path


# diagram files


def test_read_example(tmp_path):
    f = _write(tmp_path / "a.csv", "dim,birth,death\n0,0,1\n1,0.5,2\n")
    assert read_diagram(f) == E({0: [(0, 1)], 1: [(0.5, 2)]})


def test_header_only_is_empty(tmp_path):
    d = read_diagram(_write(tmp_path / "a.csv", "dim,birth,death\n"))
    assert d.k == 0 and d.n_points() == 0


def test_repeated_rows_add_multiplicity(tmp_path):
    d = read_diagram(_write(tmp_path / "a.csv", "dim,birth,death\n0,0,1\n0,0,1\n"))
    assert len(d[0]) == 2


def test_missing_dimensions_are_empty(tmp_path):
    d = read_diagram(_write(tmp_path / "a.csv", "dim,birth,death\n2,0,1\n"))
    assert d.k == 2 and len(d[0]) == 0 and len(d[1]) == 0


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("x,y,z\n0,0,1\n", 1),
        ("dim,birth,death\n0,0,1\n0,zero,1\n", 3),
        ("dim,birth,death\n0,0\n", 2),
        ("dim,birth,death\n-1,0,1\n", 2),
    ],
)
def test_parse_errors_carry_line(tmp_path, text, line):
    with pytest.raises(ParseError) as info:
        read_diagram(_write(tmp_path / "a.csv", text))
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_birth_after_death_reports_line(tmp_path):
    with pytest.raises(DiagramValidationError, match="line 3") as info:
        read_diagram(_write(tmp_path / "a.csv", "dim,birth,death\n0,0,1\n0,3,1\n"))
    assert info.value.violations[0].reason == "birth > death"


def test_non_finite_rejected(tmp_path):
    with pytest.raises(DiagramValidationError, match="non-finite"):
        read_diagram(_write(tmp_path / "a.csv", "dim,birth,death\n0,0,inf\n"))


def test_round_trip(tmp_path, rng):
    for i in range(20):
        d = random_extended(rng)
        write_diagram(d, tmp_path / "d.csv")
        assert read_diagram(tmp_path / "d.csv") == d


def test_write_is_canonical(tmp_path):
    write_diagram(E({1: [(2, 3)], 0: [(1, 2), (0, 5)]}), tmp_path / "d.csv")
    assert (tmp_path / "d.csv").read_text() == "dim,birth,death\n0,0.0,5.0\n0,1.0,2.0\n1,2.0,3.0\n"


def test_matrix_round_trip(tmp_path, rng):
    m = distance_matrix([random_extended(rng) for _ in range(4)], DistanceConfig(), ["a", "b", "c", "d"])
    write_matrix(m, tmp_path / "m.csv")
    back = read_matrix(tmp_path / "m.csv")
    assert back.labels == m.labels and np.array_equal(back.values, m.values)


def test_matrix_rejects_asymmetry(tmp_path):
    with pytest.raises(ParseError):
        read_matrix(_write(tmp_path / "m.csv", "id,a,b\na,0,1\nb,2,0\n"))


def test_labels(tmp_path):
    assert read_labels(_write(tmp_path / "l.csv", "id,label\nx,1\ny,0\n")) == {"x": "1", "y": "0"}


# CLI


def _run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def pair(tmp_path):
    a = _write(tmp_path / "a.csv", "dim,birth,death\n0,0,1\n1,0.5,2\n1,0.25,3.5\n")
    b = _write(tmp_path / "b.csv", "dim,birth,death\n0,0,2\n1,1,1.5\n")
    return a, b


@pytest.mark.parametrize(
    "metric, variant, extra",
    [("etd", "etd", ["--angles", "4"]), ("basic-etd", "basic_etd", []), ("swd", "swd", ["--slices", "16"]),
     ("wd", "exact_wd", []), ("ps", "ps", []), ("cosine-etd", "cosine_etd", ["--angles", "3"])],
)
def test_dist_equals_library(capsys, pair, metric, variant, extra):
    code, out, _ = _run(capsys, "dist", *pair, "--metric", metric, "--p", "1.5", *extra)
    assert code == 0
    got = json.loads(out)
    n = int(extra[1]) if extra and extra[0] == "--angles" else 1
    cfg = DistanceConfig(p=1.5, angles=make_angle_set(n), variant=variant, n_slices=16)
    ref = compute_distance(read_diagram(pair[0]), read_diagram(pair[1]), cfg)
    assert got["value"] == ref.value  # float round-trip through JSON is exact
    assert got["per_dimension"] == list(ref.per_dimension)


def test_dist_angle_list(capsys, pair):
    code, out, _ = _run(capsys, "dist", *pair, "--angle-list", "0.1,2.0;1.5")
    assert code == 0
    cfg = DistanceConfig(angles=(AngleSet((0.1, 2.0)), AngleSet((1.5,))))
    assert json.loads(out)["value"] == compute_distance(read_diagram(pair[0]), read_diagram(pair[1]), cfg).value


def test_dist_subprocess(pair):
    proc = subprocess.run(
        [sys.executable, "-m", "topodist", "dist", *map(str, pair), "--metric", "basic-etd"],
        capture_output=True, text=True, check=True,
    )
    assert math.isfinite(json.loads(proc.stdout)["value"])


def test_usage_error_exit_1(capsys, pair):
    code, _, err = _run(capsys, "dist", *pair, "--bogus")
    assert code == 1 and err.startswith("error:")
    code, _, _ = _run(capsys, "dist", *pair, "--p", "0.5")
    assert code == 1


def test_data_error_exit_2(capsys, tmp_path, pair):
    bad = _write(tmp_path / "bad.csv", "dim,birth,death\n0,3,1\n")
    code, _, err = _run(capsys, "dist", pair[0], bad)
    assert code == 2 and "line 2" in err
    code, _, _ = _run(capsys, "dist", pair[0], tmp_path / "missing.csv")
    assert code == 2


def test_resource_error_exit_3(capsys, pair):
    code, _, err = _run(capsys, "dist", *pair, "--metric", "wd", "--max-points", "2")
    assert code == 3 and err.startswith("error:")


def test_gen_matrix_knn_curves(capsys, tmp_path):
    spec = {"classes": [
        {"class_id": "a", "n_samples": 6, "n_points": [5], "lifetimes": [1.0], "noise": 0.05, "seed": 1},
        {"class_id": "b", "n_samples": 6, "n_points": [5], "lifetimes": [3.0], "noise": 0.05, "seed": 2},
    ]}
    _write(tmp_path / "spec.json", json.dumps(spec))
    data = tmp_path / "data"
    assert _run(capsys, "gen", "--spec", tmp_path / "spec.json", "--out", data)[0] == 0
    assert len(list(data.glob("*.csv"))) == 13
    assert _run(capsys, "matrix", data, "--metric", "etd", "--angles", "4", "--out", tmp_path / "m.csv", "--jobs", "2")[0] == 0
    m = read_matrix(tmp_path / "m.csv")
    assert len(m) == 12 and "labels" not in m.labels
    code, out, _ = _run(capsys, "knn", "--matrix", tmp_path / "m.csv", "--labels", data / "labels.csv", "--trials", "3")
    assert code == 0 and json.loads(out)["accuracy"] == 1.0
    code, _, _ = _run(capsys, "curves", data, "--metrics", "etd:4,swd:8,wd", "--out", tmp_path / "c.csv")
    assert code == 0
    lines = (tmp_path / "c.csv").read_text().splitlines()
    assert lines[0] == "metric,dimension,index,value" and len(lines) == 1 + 3 * 12
    assert all(float(x.split(",")[-1]) == 0 for x in lines if x.startswith("wd,"))


def test_bench(capsys, tmp_path):
    code, _, _ = _run(capsys, "bench", "--sizes", "10,20", "--metrics", "etd:1,swd:10,wd", "--reps", "1", "--out", tmp_path / "b.csv")
    assert code == 0
    lines = (tmp_path / "b.csv").read_text().splitlines()
    assert lines[0] == "metric,M,k,p,angles,median_ms,trials" and len(lines) == 7


def test_failed_command_leaves_no_output(capsys, tmp_path):
    d = tmp_path / "d"
    d.mkdir()
    _write(d / "a.csv", "dim,birth,death\n0,0,1\n")
    _write(d / "b.csv", "dim,birth,death\n0,0,1\n0,0,2\n0,0,3\n")
    code, _, _ = _run(capsys, "matrix", d, "--metric", "wd", "--max-points", "3", "--out", tmp_path / "m.csv")
    assert code == 3
    assert not (tmp_path / "m.csv").exists()
    assert [p.name for p in tmp_path.iterdir()] == ["d"]
