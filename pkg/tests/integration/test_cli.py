import json

import pytest

from api.cli import run
from core.exceptions import EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_OK


def write_job(tmp_path, **fields):
    data = {"p": 2, "variables": ["x", "y", "z"], "lifts": ["x^3 + y^3 + z^3"]}
    data.update(fields)
    path = tmp_path / "job.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


class TestCommands:
    """qfs subcommands end to end"""

    def test_presets(self, capsys):
        assert run(["presets"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "e8-p2" in out
        assert "double-fermat-cubic" in out

    def test_height_json(self, capsys):
        assert run(["height", "--preset", "e8-p2", "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["command"] == "height"
        assert (report["height"]["kind"], report["height"]["value"]) == ("finite", 4)
        assert report["config"]["name"] == "e8-p2"

    def test_height_text(self, capsys):
        assert run(["height", "--preset", "fermat-cubic"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "ht = 2" in out
        assert "F-pure: no" in out

    def test_ppt_from_file(self, tmp_path, capsys):
        path = write_job(tmp_path, weights=[1, 1, 1], assertions={"complete_intersection": True}, output="json")
        assert run(["ppt", "--input", path]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["ppt"]["value"] == "1/3"
        assert report["ffinfty"] is False

    def test_ppt_without_assertion(self, tmp_path, capsys):
        assert run(["ppt", "--input", write_job(tmp_path)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "ppt unknown" in out
        assert "missing-complete-intersection" in out

    def test_chain_levels(self, capsys):
        assert run(["chain", "--preset", "e8-p2", "--levels", "0", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["chains"] == []

    def test_chain_text(self, capsys):
        assert run(["chain", "--preset", "fermat-cubic", "--dump-levels", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "I-chain:" in out
        assert "J-descent:" in out

    def test_inconclusive_exit_code(self, capsys):
        assert run(["height", "--preset", "e8-p2", "--max-height", "2"]) == EXIT_INCONCLUSIVE
        assert "inconclusive" in capsys.readouterr().out

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "report.json"
        assert run(["height", "--preset", "e8-p5", "--json", "--output", str(target)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["height"]["value"] == 2

    def test_witt_selftest(self, capsys):
        assert run(["witt-selftest", "--p", "2", "--n", "2", "--trials", "3", "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["witt_selftest"]["ok"] is True


class TestInputErrors:
    """Everything the user can get wrong exits with 1"""

    def test_unknown_preset(self):
        assert run(["height", "--preset", "e7-p2"]) == EXIT_INPUT

    def test_missing_file(self, tmp_path):
        assert run(["height", "--input", str(tmp_path / "nope.json")]) == EXIT_INPUT

    def test_bad_json(self, tmp_path):
        path = tmp_path / "job.json"
        path.write_text("{not json", encoding="utf-8")
        assert run(["height", "--input", str(path)]) == EXIT_INPUT

    def test_syntax_error_in_lift(self, tmp_path):
        assert run(["height", "--input", write_job(tmp_path, lifts=["x^3 + 2y"])]) == EXIT_INPUT

    def test_inhomogeneous_weights(self, tmp_path):
        path = write_job(tmp_path, lifts=["x*y + z^3"], weights=[1, 1, 1], assertions={"complete_intersection": True})
        assert run(["ppt", "--input", path]) == EXIT_INPUT

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["height"],
            ["height", "--preset", "e8-p2", "--input", "job.json"],
            ["height", "--preset", "e8-p2", "--max-height", "0"],
            ["chain", "--preset", "e8-p2", "--levels", "-1"],
            ["witt-selftest", "--p", "2"],
        ],
    )
    def test_usage(self, argv):
        assert run(argv) == EXIT_INPUT

    @pytest.mark.parametrize("p, n", [(2, 5), (4, 2)])
    def test_witt_limits(self, p, n):
        assert run(["witt-selftest", "--p", str(p), "--n", str(n)]) == EXIT_INPUT
