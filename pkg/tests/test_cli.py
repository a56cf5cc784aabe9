import json

import pytest

from sumsetlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def result(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0
    return json.loads(out)["result"]


def test_census(capsys):
    r = result(capsys, "census", "--n", "2", "--threads", "1")
    assert r["count_sumsets"] == "6"
    assert r["count_H"] == "7"


def test_bounds(capsys):
    r = result(capsys, "bounds", "--N", "1048576", "--s", "25600")
    assert r["k"] == "4"


def test_recognize(capsys):
    r = result(capsys, "recognize", "--group", "f2:1", "--set", "[0,1]")
    assert r["decision"] == "yes" and r["certificate"] == [0, 1]


def test_manifest_fields(capsys):
    code, out = run(capsys, "indsets", "--n", "2", "--extra", "b11", "--threads", "3")
    doc = json.loads(out)
    m = doc["manifest"]
    assert m["subcommand"] == "indsets" and m["workers"] == 3 and m["seed"] == 0
    assert "wall_time" not in m
    assert doc["result"]["count"] == "5"
    code, out = run(capsys, "indsets", "--n", "2", "--timing")
    assert "wall_time" in json.loads(out)["manifest"]


def test_formats(capsys, tmp_path):
    code, out = run(capsys, "parity", "--n", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "k,count,frequency,poisson_ref"
    code, out = run(capsys, "hplanes", "--n", "2", "--format", "text")
    assert "count_H: 7" in out
    target = tmp_path / "o.json"
    code, out = run(capsys, "lift", "--group", "f2:2", "--set", "[0]", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["result"]["lifted"] == [0, 4]


def test_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["census", "--bogus"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["nosuchcommand"])
    assert exc.value.code == 64
    assert main(["census", "--n", "6"]) == 65
    assert main(["recognize", "--group", "z:4", "--set", "[0]"]) == 64
    assert main(["cover", "--group", "f2:3", "--set", "[0,5]"]) == 2
    assert main(["intersect-repr", "--n", "3", "--set", "[1]"]) == 64


def test_cover_and_intersection(capsys):
    r = result(capsys, "cover", "--group", "z:64", "--density", "0.5", "--seed", "42")
    assert r["verified"] and r["lower_bound"] <= r["size"] <= len(r["target"])
    r = result(capsys, "intersect-repr", "--n", "6", "--seed", "7", "--samples", "50")
    assert r["samples"] == 50


def test_other_commands(capsys):
    assert result(capsys, "complete", "--group", "f2:3", "--set", "[0,1,2,3,4]")["missing"] == [1, 2, 3]
    r = result(capsys, "maxclique", "--group", "z:16", "--set", "[1,3,5,7,9,11,13,15]")
    assert r["size"] == 2
    r = result(capsys, "manysums", "--group", "f2:6", "--seed", "1")
    assert len(r["A_prime"]) ** 2 >= len(r["A"])
    r = result(capsys, "shatter", "--family", "[[0],[1]]", "--check", "pajor")
    assert r["shattered_count"] == 3 and r["ok"]
    r = result(capsys, "shatter", "--family", "[[0,1]]", "--check", "fkg")
    assert r["ok"]
    r = result(capsys, "shatter", "--family", "[[0,1],[0],[1],[]]", "--check", "chern", "--gamma", "0.5")
    assert r["witness"] == [0, 1]
