"""Tests für die CSV-Artefakt-Pipeline."""

from pathlib import Path

import pytest

from log_system import LogType
from log_system.formatters import ResultFormatter
from log_system.handlers import FileHandler
from stable_cir import LoggingCoordinator
from utils.csv_utils import CSVFormatter, CSVWriter


def test_numbers_are_written_losslessly():
    formatter = CSVFormatter()
    assert formatter.format_number(0.1) == "0.1"
    assert float(formatter.format_number(1 / 3)) == 1 / 3
    assert formatter.format_number(None) == "-"
    assert formatter.format_number(True) == "1"
    assert formatter.format_number(7) == "7"


def test_session_info_has_no_timestamp():
    lines = CSVFormatter().create_session_info("laplace", "1.0.0", ["model.a=1.0"], slope=0.5)
    assert lines == ["# laplace", "# version=1.0.0", "# model.a=1.0", "# slope=0.5"]


def test_formatter_rejects_ragged_rows():
    formatter = ResultFormatter(None, ["x", "f"])
    assert formatter.format([[1.0, 2.0]]) == [["1.0", "2.0"]]
    with pytest.raises(ValueError):
        formatter.format([[1.0]])


def test_writer_replaces_file_atomically(tmp_path):
    target = tmp_path / "nested" / "out.csv"
    writer = CSVWriter()
    assert writer.write_file(target, ["a"], [["1"]], ["# first"])
    assert writer.write_file(target, ["a"], [["2"]], ["# second"])
    assert target.read_text(encoding="utf-8") == "# second\na\n2\n"
    assert sorted(p.name for p in target.parent.iterdir()) == ["out.csv"]


def test_side_files_live_next_to_main_output(run_config):
    handler = FileHandler(run_config)
    main = handler.get_current_path("density")
    assert handler.get_current_path("summary") == main.with_name("out_summary.csv")


def test_coordinator_writes_header_and_rows(run_config):
    coordinator = LoggingCoordinator(run_config)
    info = coordinator.session_info("laplace", max_error=1e-12)
    coordinator.log_result(LogType.LAPLACE, [[1.0, 2.0, 0.5, 0.25, 0.5, 0.5]], info)
    coordinator.log_result(LogType.LAPLACE, [[1.0, 2.0, 1.0, 0.125, 0.25, 0.5]])
    assert coordinator.close()

    path = Path(run_config.output.path)
    lines = path.read_text(encoding="utf-8").splitlines()
    comments = [line for line in lines if line.startswith("#")]
    data = [line for line in lines if not line.startswith("#")]
    assert comments[0] == "# laplace"
    assert "# command=density" in comments
    assert comments[-1] == "# max_error=1e-12"
    assert data == ["t,y0,lambda,value,phi2,phi1",
                    "1.0,2.0,0.5,0.25,0.5,0.5",
                    "1.0,2.0,1.0,0.125,0.25,0.5"]
    assert coordinator.written_paths() == {"laplace": path}


def test_coordinator_separates_summary(run_config):
    coordinator = LoggingCoordinator(run_config)
    coordinator.log_result(LogType.ENSEMBLE, [[0, 0, 0.0, 1.0, 0.0]], ["# ensemble"])
    coordinator.log_result(LogType.SUMMARY, [[0.0, 1.0, 0.0, 0.0]], ["# summary"])
    coordinator.close()

    paths = coordinator.written_paths()
    assert paths["ensemble"] != paths["summary"]
    assert paths["summary"].read_text(encoding="utf-8").splitlines()[1] == "t,mean_y,mean_x,var_x"
