"""Unit tests for FileTraceExporter."""

import os
from pathlib import Path

import pandas as pd
import pytest

from src.modules.simulation.domain.certificate import build_certificate
from src.modules.simulation.domain.closed_loop import StateLayout, closed_loop_equilibrium
from src.modules.simulation.domain.errors import ExportError
from src.modules.simulation.domain.simulate import IntegrationSettings, integrate
from src.modules.simulation.domain.trace import TraceRecorder
from src.modules.simulation.infrastructure.file_trace_exporter import (
    CERTIFICATE_FILE,
    TRACE_FILE,
    FileTraceExporter,
)


@pytest.fixture
def finished_run(toy_system):
    settings = IntegrationSettings(step=1.0, max_steps=50, tolerance=1e-9, window=5)
    z0 = closed_loop_equilibrium(toy_system)
    result = integrate(toy_system, settings, z0)
    return result.trace, build_certificate("toy", toy_system, result, result.final_state, False, 0.375)


class TestFileTraceExporter:
    """Tests for FileTraceExporter."""

    def test_writes_trace_and_certificate(self, finished_run, tmp_path):
        """Should write one CSV row per sample and the certificate text."""
        trace, certificate = finished_run

        paths = FileTraceExporter().export(trace, certificate, tmp_path / "out")

        assert [path.name for path in paths] == [TRACE_FILE, CERTIFICATE_FILE]
        frame = pd.read_csv(tmp_path / "out" / TRACE_FILE)
        assert len(frame) == trace.sample_count
        assert list(frame.columns) == list(trace.columns())
        assert (tmp_path / "out" / CERTIFICATE_FILE).read_text(encoding="utf-8").startswith("scenario")

    def test_writes_plots_on_request(self, finished_run, tmp_path):
        """Should add voltage, current and load plots."""
        trace, certificate = finished_run

        paths = FileTraceExporter(plot_format="svg").export(trace, certificate, tmp_path, plot=True)

        assert {path.name for path in paths} == {TRACE_FILE, CERTIFICATE_FILE, "voltage.svg", "current.svg", "ul.svg"}
        assert all(path.stat().st_size > 0 for path in paths)

    def test_no_staging_left_behind(self, finished_run, tmp_path):
        """Should remove the temporary directory after moving the files."""
        trace, certificate = finished_run

        FileTraceExporter().export(trace, certificate, tmp_path)

        assert sorted(path.name for path in tmp_path.iterdir()) == sorted([TRACE_FILE, CERTIFICATE_FILE])

    def test_empty_trace_raises_error(self, finished_run, tmp_path):
        """Should refuse an empty trace and write nothing."""
        _, certificate = finished_run
        empty = TraceRecorder(StateLayout(3, 3)).freeze()

        with pytest.raises(ExportError) as exc_info:
            FileTraceExporter().export(empty, certificate, tmp_path / "out")

        assert exc_info.value.details["path"] == str(tmp_path / "out")
        assert not (tmp_path / "out").exists()

    def test_unwritable_directory_raises_error(self, finished_run, tmp_path):
        """Should report a path that is a file."""
        trace, certificate = finished_run
        blocker = tmp_path / "blocker"
        blocker.write_text("", encoding="utf-8")

        with pytest.raises(ExportError):
            FileTraceExporter().export(trace, certificate, blocker)

    def test_failed_move_restores_previous_files(self, finished_run, tmp_path, monkeypatch):
        """Should put back replaced files and remove moved ones when a later move fails."""
        trace, certificate = finished_run
        (tmp_path / TRACE_FILE).write_text("old trace\n", encoding="utf-8")
        real_replace = os.replace

        def failing_replace(source, target):
            source = Path(source)
            if source.name == CERTIFICATE_FILE and source.parent.name.startswith(".export-"):
                raise OSError("No space left on device")
            return real_replace(source, target)

        monkeypatch.setattr(os, "replace", failing_replace)

        with pytest.raises(ExportError):
            FileTraceExporter().export(trace, certificate, tmp_path)

        assert sorted(path.name for path in tmp_path.iterdir()) == [TRACE_FILE]
        assert (tmp_path / TRACE_FILE).read_text(encoding="utf-8") == "old trace\n"
