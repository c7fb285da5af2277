"""Tests for the report renderings, the commands and the command-line entry point."""

import csv
import io
import json

import pytest

from peulab import __version__
from peulab.analytics.reporter import Provenance, Report, format_cell, write_report
from peulab.commands import cmd_ellsberg, cmd_evaluate, cmd_reproduce, cmd_sequential, cmd_sweep
from peulab.exceptions import DomainError, ScenarioError
from peulab.main import EXIT_DOMAIN, EXIT_MISMATCH, EXIT_OK, EXIT_SCENARIO, main
from peulab.social.peu import PeuParams


def small_report():
    report = Report(title="demo", command="demo", provenance=Provenance(command="demo", parameters={"alpha": 0.8}))
    report.add_table("values", ["name", "value", "flag", "missing"], [["a", 0.1, True, None], ["b", 2, False, None]])
    report.notes.append("a note")
    return report


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_scenario(tmp_path, **extra):
    raw = {
        "version": 1,
        "persons": ["Ann", "Bea"],
        "options": [{
            "name": "equal shot",
            "marginals": [
                {"success": 80, "failure": 50, "chance": {"kind": "precise", "p": 0.5}},
                {"success": 80, "failure": 50, "chance": {"kind": "vacuous"}},
            ],
        }],
        **extra,
    }
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(raw), encoding="utf-8")
    return str(path)


def bad_scenario():
    blind = {"kind": "vacuous"}
    return {
        "version": 1,
        "persons": ["Ann", "Bea"],
        "options": [{
            "name": "broken",
            "marginals": [
                {"success": 80, "failure": 50, "chance": blind},
                {"success": 80, "failure": 50, "chance": {"kind": "interval", "lo": 0.9, "hi": 0.2}},
            ],
        }],
    }


class TestReport:

    def test_cells(self):
        assert format_cell(0.1) == "0.1"
        assert format_cell(True) == "true"
        assert format_cell(None) == ""
        assert format_cell(3) == "3"

    def test_markdown(self):
        text = small_report().to_markdown()
        assert text.startswith("# demo\n")
        assert "## values" in text
        assert "| a | 0.1 | true |  |" in text
        assert '"version": "%s"' % __version__ in text

    def test_json(self):
        report = small_report()
        data = json.loads(report.to_json())
        assert data["tables"][0]["rows"][0] == ["a", 0.1, True, None]
        assert Report.from_json(report.to_json()) == report

    def test_csv(self):
        rows = list(csv.reader(io.StringIO(small_report().to_csv())))
        assert rows[0] == ["# report", "demo"]
        assert ["# table", "values"] in rows
        assert ["b", "2", "false", ""] in rows
        assert rows[-1][0] == "# provenance"

    def test_unknown_table_and_format(self):
        report = small_report()
        with pytest.raises(KeyError):
            report.table("nope")
        with pytest.raises(DomainError):
            report.render("xml")

    def test_write_to_file(self, tmp_path):
        target = tmp_path / "out" / "report.json"
        text = write_report(small_report(), "json", str(target))
        assert target.read_text(encoding="utf-8") == text


class TestCommands:

    def test_reproduce_social(self):
        report = cmd_reproduce(3, PeuParams())
        assert report.status == "ok"
        assert len(report.table("comparisons").rows) == 12
        assert [row[0] for row in report.table("option values").rows] == [str(i) for i in range(1, 9)]

    def test_reproduce_utilitarian_is_a_mismatch(self):
        report = cmd_reproduce(3, PeuParams(beta=0.0, gamma=0.0))
        assert report.status == "mismatch"

    def test_reproduce_ellsberg(self):
        report = cmd_reproduce(4, PeuParams())
        assert report.status == "ok"
        realized = {row[0]: row[6] for row in report.table("agent traces").rows}
        assert realized == {"naive": "RR", "sophisticated": "AR", "global": "AA"}
        violations = {row[0]: row for row in report.table("violations").rows}
        assert violations["global"][2:7:2] == [False, False, False]
        assert violations["sophisticated"][7:11] == ["{AA, AR, RA, RR}", "AR", "{AR, RA}", "RA"]
        assert any("(II) and (IV)" in note and "AA 80.0" in note and "RA 80.0" in note for note in report.notes)

    def test_unknown_section(self):
        with pytest.raises(DomainError):
            cmd_reproduce(5, PeuParams())

    def test_sweep_kinds(self):
        report = cmd_sweep("peu_params", "alpha=0.8,beta=0.5,gamma=0.25")
        assert report.table("summary").rows[0][:3] == [1, 1, True]
        report = cmd_sweep("heu-reversal", "alpha=1")
        assert report.table("reversals").rows == []
        with pytest.raises(DomainError):
            cmd_sweep("other", None)

    def test_ellsberg_shares_seed(self):
        report = cmd_ellsberg(0.3, 20_000, 5, batch_size=4_096)
        rows = {row[0]: row for row in report.table("win probabilities").rows}
        assert rows["AA"][1] == pytest.approx(0.58)
        assert report.provenance.seed == 5
        assert "workers" not in report.provenance.parameters

    def test_sequential(self):
        report = cmd_sequential("sophisticated", 0.8, 42)
        assert report.table("trace").rows[0][6] == "AR"
        assert report.table("simultaneous setting").rows == [["sophisticated", "AA"]]
        with pytest.raises(DomainError):
            cmd_sequential("oracle", 0.8, 42)

    def test_evaluate_missing_file(self, tmp_path):
        with pytest.raises(ScenarioError):
            cmd_evaluate(str(tmp_path / "none.json"), PeuParams())

    def test_evaluate_merges_file_params(self, tmp_path):
        path = write_scenario(tmp_path, params={"beta": 0.3})
        parameters = cmd_evaluate(path, PeuParams(alpha=0.7)).provenance.parameters
        assert (parameters["alpha"], parameters["beta"], parameters["gamma"]) == (0.7, 0.3, 0.25)

    def test_evaluate_reports_payoffs(self, tmp_path):
        report = cmd_evaluate(write_scenario(tmp_path, payoffs={"aa": 90, "w_fail": 0}), PeuParams())
        assert report.provenance.parameters["payoff_aa"] == 90.0
        assert report.provenance.parameters["payoff_w_fail"] == 0.0
        assert ["AA", 90.0] in report.table("payoff schedule").rows
        assert "payoff_aa" not in cmd_evaluate(write_scenario(tmp_path), PeuParams()).provenance.parameters

    def test_uncertainty_column(self):
        table = cmd_reproduce(3, PeuParams()).table("option values")
        column = table.columns.index("uncertainty")
        assert [row[column] for row in table.rows] == ["risk"] * 4 + ["maximal"] * 3 + ["moderate"]


class TestCli:

    def test_reproduce_defaults(self, capsys, no_config):
        code, out, _ = run_cli(capsys, "reproduce", "--section", "3", "--config", no_config)
        assert code == EXIT_OK
        assert "## comparisons" in out

    def test_reproduce_mismatch(self, capsys, no_config):
        code, _, _ = run_cli(capsys, "reproduce", "--section", "3", "--beta", "0", "--gamma", "0",
                             "--config", no_config)
        assert code == EXIT_MISMATCH

    def test_incoherent_interval(self, capsys, tmp_path, no_config):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(bad_scenario()), encoding="utf-8")
        code, _, err = run_cli(capsys, "evaluate", "--scenario", str(path), "--config", no_config)
        assert code == EXIT_SCENARIO
        assert "options[0].marginals[1].chance" in err

    def test_bad_grid(self, capsys, no_config):
        code, _, _ = run_cli(capsys, "sweep", "--kind", "peu-params", "--grid", "alpha=1:0:0.1",
                             "--config", no_config)
        assert code == EXIT_SCENARIO

    def test_out_of_domain(self, capsys, no_config):
        code, _, err = run_cli(capsys, "ellsberg", "--p", "1.5", "--samples", "10", "--config", no_config)
        assert code == EXIT_DOMAIN
        assert "1.5" in err

    def test_byte_identical_reports(self, capsys, no_config):
        argv = ["reproduce", "--section", "4", "--format", "json", "--config", no_config]
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second

    def test_workers_do_not_change_report(self, capsys, no_config):
        argv = ["ellsberg", "--samples", "40000", "--batch-size", "5000", "--format", "csv", "--config", no_config]
        _, single, _ = run_cli(capsys, *argv, "--workers", "1")
        _, threaded, _ = run_cli(capsys, *argv, "--workers", "4")
        assert single == threaded

    def test_export_then_evaluate(self, capsys, tmp_path, no_config):
        path = str(tmp_path / "builtin.json")
        assert run_cli(capsys, "export", "--path", path, "--config", no_config)[0] == EXIT_OK
        _, reproduced, _ = run_cli(capsys, "reproduce", "--section", "3", "--format", "json", "--config", no_config)
        code, evaluated, _ = run_cli(capsys, "evaluate", "--scenario", path, "--format", "json",
                                     "--config", no_config)
        assert code == EXIT_OK
        assert Report.from_json(evaluated).table("option values") == Report.from_json(reproduced).table("option values")

    def test_output_file(self, capsys, tmp_path, no_config):
        target = tmp_path / "seq.md"
        code, out, _ = run_cli(capsys, "sequential", "--agent", "naive", "--output", str(target),
                               "--config", no_config)
        assert code == EXIT_OK
        assert out == ""
        assert "## violations" in target.read_text(encoding="utf-8")

    def test_scenario_payoffs_reach_ellsberg(self, capsys, tmp_path, no_config):
        path = write_scenario(tmp_path, payoffs={"aa": 90, "w_fail": 0})
        code, out, _ = run_cli(capsys, "ellsberg", "--samples", "100", "--scenario", path, "--format", "json",
                               "--config", no_config)
        assert code == EXIT_OK
        report = Report.from_json(out)
        assert report.provenance.parameters["payoff_aa"] == 90.0
        rows = {row[0]: row for row in report.table("win probabilities").rows}
        assert rows["AA"][4] == pytest.approx(0.58 * 90.0)

    def test_flag_beats_scenario_payoffs(self, capsys, tmp_path, no_config):
        path = write_scenario(tmp_path, payoffs={"aa": 90, "w_fail": 0})
        code, out, _ = run_cli(capsys, "ellsberg", "--samples", "100", "--scenario", path, "--w-fail", "5",
                               "--format", "json", "--config", no_config)
        assert code == EXIT_OK
        parameters = Report.from_json(out).provenance.parameters
        assert (parameters["payoff_aa"], parameters["payoff_w_fail"]) == (90.0, 5.0)

    def test_exported_payoffs_are_evaluated(self, capsys, tmp_path, no_config):
        path = str(tmp_path / "builtin.json")
        assert run_cli(capsys, "export", "--path", path, "--w-fail", "3", "--config", no_config)[0] == EXIT_OK
        code, out, _ = run_cli(capsys, "evaluate", "--scenario", path, "--format", "json", "--config", no_config)
        assert code == EXIT_OK
        assert ["w_fail", 3.0] in Report.from_json(out).table("payoff schedule").rows

    def test_invalid_config_value(self, capsys, tmp_path):
        config = tmp_path / "config.yml"
        config.write_text("workers: 0\n", encoding="utf-8")
        code, out, err = run_cli(capsys, "reproduce", "--section", "3", "--config", str(config))
        assert code == EXIT_DOMAIN
        assert out == ""
        assert "workers" in err
