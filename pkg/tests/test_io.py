import json

import pytest

from pauliwalk.analysis import Distribution, max_abs_diff
from pauliwalk.io import read_distribution, render_csv, sha256_text, write_distribution


@pytest.fixture
def dist():
    return Distribution.from_mapping({(1, -1): 0.25, (-1, 1): 0.5, (0, 0): 0.25})


def test_render_csv(dist):
    assert render_csv(dist, ("x", "z")) == "x,z,p\n-1,1,0.5\n0,0,0.25\n1,-1,0.25\n"
    with pytest.raises(ValueError):
        render_csv(dist, ("x",))


def test_csv_round_trip(tmp_path, dist):
    out = tmp_path / "d.csv"
    manifest = write_distribution(dist, ("x", "z"), out, {"steps": 1})
    side = json.loads((tmp_path / "d.csv.manifest.json").read_text())
    assert side == manifest
    assert manifest["output"]["sha256"] == sha256_text(out.read_text())
    names, back = read_distribution(out)
    assert names == ["x", "z"]
    assert max_abs_diff(back, dist) == 0


def test_json_round_trip(tmp_path, dist):
    out = tmp_path / "d.json"
    write_distribution(dist, ("x", "z"), out, {"steps": 1}, fmt="json")
    doc = json.loads(out.read_text())
    assert doc["columns"] == ["x", "z", "p"]
    assert doc["manifest"]["steps"] == 1
    assert doc["manifest"]["distribution_sha256"] == sha256_text(render_csv(dist, ("x", "z")))
    names, back = read_distribution(out)
    assert names == ["x", "z"] and max_abs_diff(back, dist) == 0


def test_floats_survive_exactly(tmp_path):
    d = Distribution.from_mapping({(0,): 0.1 + 0.2, (3,): 1 - (0.1 + 0.2)})
    write_distribution(d, ("z",), tmp_path / "a.csv", {})
    _, back = read_distribution(tmp_path / "a.csv")
    assert back.to_dict() == d.to_dict()


def test_unknown_format(tmp_path, dist):
    with pytest.raises(ValueError):
        write_distribution(dist, ("x", "z"), tmp_path / "a.txt", {}, fmt="xml")


def test_read_rejects_bad_header(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x,q\n1,0.5\n")
    with pytest.raises(ValueError):
        read_distribution(bad)
    empty = tmp_path / "empty.csv"
    empty.write_text("x,p\n")
    with pytest.raises(ValueError):
        read_distribution(empty)
