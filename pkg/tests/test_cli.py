import csv
import io
import json

import pytest

from published import COUNTS, RATIOS
from sgcount.cli import main


@pytest.fixture
def run(cache_dir, capsys):
    def go(*argv):
        code = main([*argv, "--cache-dir", str(cache_dir)])
        out, err = capsys.readouterr()
        return code, out, err

    return go


def test_derive_verify(run):
    code, out, err = run("derive", "--d", "2", "--b", "2", "--verify")
    assert code == 0
    body = json.loads(out)
    assert body["format_version"] == 1
    assert body["flags"]["d"] == 2 and body["flags"]["verify"] is True
    assert body["system"]["variables"] == ["3", "2,1", "1,1,1"]


def test_derive_reports_fixture_mismatch(run):
    code, _, err = run("derive", "--d", "3", "--b", "2", "--verify")
    assert code == 3
    assert "2,1,1" in err


def test_derive_unsupported(run):
    code, _, err = run("derive", "--d", "3", "--b", "3")
    assert code == 2
    assert "error" in err


def test_derive_budget(run, tmp_path):
    cfg = tmp_path / "c.conf"
    cfg.write_text("derivation_budget = 10\n")
    code, _, _ = run("derive", "--d", "2", "--b", "2", "--no-cache", "--config", str(cfg))
    assert code == 4


def test_derive_sg4_variables(run):
    code, out, _ = run("derive", "--d", "4", "--b", "2", "--format", "csv")
    assert code == 0
    names = {row["name"] for row in csv.DictReader(io.StringIO(out))}
    assert names == {"f", "g", "g'", "h", "h'", "r", "s"}


@pytest.mark.parametrize("d,b,stages", [(2, 2, 3), (2, 4, 2), (4, 2, 2)])
def test_evaluate_csv(run, d, b, stages):
    code, out, _ = run("evaluate", "--d", str(d), "--b", str(b), "--stages", str(stages),
                       "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    for row in rows:
        stage = int(row.pop("stage"))
        if stage in COUNTS[(d, b)]:
            assert {k: int(v) for k, v in row.items()} == COUNTS[(d, b)][stage]
    assert "e+" not in out and "E" not in out


def test_evaluate_json_uses_strings(run):
    code, out, _ = run("evaluate", "--d", "2", "--b", "2", "--stages", "2")
    body = json.loads(out)
    assert body["vectors"][2]["counts"]["3"] == "13312000"


def test_evaluate_stage_cap(run):
    code, _, err = run("evaluate", "--d", "4", "--b", "2", "--stages", "7")
    assert code == 4


def test_ratios(run):
    code, out, _ = run("ratios", "--d", "2", "--b", "3", "--stages", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert rows[3] == ["3", *RATIOS[(2, 3)][3]]


def test_bounds_improved(run):
    code, out, _ = run("bounds", "--d", "2", "--b", "2", "--method", "improved", "--m", "8")
    assert code == 0
    row = json.loads(out)["bounds"][0]
    assert float(row["lower"]) <= 1.27649593067 <= float(row["upper"])


def test_bounds_range_and_default_method(run):
    code, out, _ = run("bounds", "--d", "2", "--b", "4", "--m", "3", "--m-min", "1")
    rows = json.loads(out)["bounds"]
    assert [r["m"] for r in rows] == [1, 2, 3]
    assert {r["method"] for r in rows} == {"sg24"}


def test_bounds_method_family_mismatch(run):
    code, _, _ = run("bounds", "--d", "2", "--b", "2", "--method", "sg23", "--m", "2")
    assert code == 1


def test_oracle_sg2(run):
    code, out, _ = run("oracle", "--d", "2", "--b", "2", "--stage", "2")
    assert code == 0
    checks = json.loads(out)["checks"]
    assert [int(c["oracle"]) for c in checks[:3]] == [13_312_000, 7_462_400, 13_276_800]
    assert all(c["agree"] for c in checks)


def test_oracle_mismatch_exit_code(run, cache_dir):
    # corrupt the cached system so the recursion disagrees with brute force
    from sgcount.derivation import RecursionSystem, cache_path
    from sgcount.fixtures import fixture_system

    path = cache_path(cache_dir / "bad", 3, 2)
    path.parent.mkdir(exist_ok=True)
    path.write_text(fixture_system("SG3").to_json())
    code = main(["oracle", "--d", "3", "--b", "2", "--stage", "1",
                 "--cache-dir", str(cache_dir / "bad")])
    assert code == 5
    assert RecursionSystem.from_json(path.read_text()) == fixture_system("SG3")


def test_fit(run):
    code, out, _ = run("fit", "--d", "2", "--stages", "10", "--precision", "20")
    assert code == 0
    z = float(json.loads(out)["fit"]["z"])
    assert abs(z - 1.276495931) < 1e-6


def test_dimension(run):
    code, out, _ = run("dimension", "--d", "2", "--b", "3", "--format", "csv", "--precision", "12")
    assert out.splitlines()[1] == "2,3,1.63092975357"


def test_out_file(run, tmp_path):
    target = tmp_path / "sys.json"
    code, out, _ = run("derive", "--d", "2", "--b", "3", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["system"]["b"] == 3


def test_deterministic(run):
    a = run("evaluate", "--d", "2", "--b", "3", "--stages", "2")[1]
    b = run("evaluate", "--d", "2", "--b", "3", "--stages", "2")[1]
    assert a == b
