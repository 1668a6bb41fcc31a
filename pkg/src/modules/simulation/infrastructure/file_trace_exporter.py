"""File implementation of TraceExporter: CSV trace, text certificate, static plots."""

import os
import shutil
import tempfile
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402

from src.modules.simulation.application.ports.trace_exporter import TraceExporter  # noqa: E402
from src.modules.simulation.domain.errors import ExportError  # noqa: E402
from src.modules.simulation.domain.trace import RunCertificate, SimTrace  # noqa: E402
from src.shared.utils.logger import Logger  # noqa: E402

TRACE_FILE = "trace.csv"
CERTIFICATE_FILE = "certificate.txt"

# file stem -> (trace column prefix, y-axis label, title)
PLOTS = {
    "voltage": ("V_", "V (V)", "Voltage at the PCC"),
    "current": ("Is_", "I_s (A)", "Generated current"),
    "ul": ("ul_", "u_l", "Load control input"),
}


class FileTraceExporter(TraceExporter):
    """
    Writes runs into a directory.

    Files are first written to a sibling temporary directory and moved into
    place only when all of them succeeded.
    """

    def __init__(self, plot_format: str = "svg") -> None:
        self._plot_format = plot_format
        self._logger = Logger("SIM:EXPORTER")

    def export(
        self,
        trace: SimTrace,
        certificate: RunCertificate,
        directory: Path,
        plot: bool = False,
    ) -> list[Path]:
        directory = Path(directory)
        if trace.is_empty:
            raise ExportError("Cannot export an empty trace", str(directory))

        try:
            directory.mkdir(parents=True, exist_ok=True)
            staging = Path(tempfile.mkdtemp(prefix=".export-", dir=directory))
        except OSError as exc:
            raise ExportError(f"Cannot create output directory: {exc}", str(directory)) from exc

        try:
            names = [self._write_trace(trace, staging), self._write_certificate(certificate, staging)]
            if plot:
                names += self._write_plots(trace, staging)
            written = self._commit(staging, directory, names)
        except OSError as exc:
            raise ExportError(f"Cannot write results: {exc}", str(directory)) from exc
        finally:
            shutil.rmtree(staging, ignore_errors=True)

        self._logger.info("Results written", extra={"directory": str(directory), "files": len(written)})
        return written

    @staticmethod
    def _commit(staging: Path, directory: Path, names: list[str]) -> list[Path]:
        """
        Move staged files into place.

        Files they replace are parked in the staging directory; if any move fails
        the files already moved are removed and the parked ones restored.
        """
        parked = staging / ".previous"
        parked.mkdir()
        moved: list[str] = []
        try:
            for name in names:
                target = directory / name
                if target.exists():
                    os.replace(target, parked / name)
                moved.append(name)
                os.replace(staging / name, target)
        except OSError:
            for name in reversed(moved):
                (directory / name).unlink(missing_ok=True)
                if (parked / name).exists():
                    os.replace(parked / name, directory / name)
            raise
        return [directory / name for name in names]

    @staticmethod
    def _write_trace(trace: SimTrace, directory: Path) -> str:
        frame = pd.DataFrame(trace.columns())
        frame.to_csv(directory / TRACE_FILE, index=False, sep=",", decimal=".", lineterminator="\n")
        return TRACE_FILE

    @staticmethod
    def _write_certificate(certificate: RunCertificate, directory: Path) -> str:
        text = "\n".join(certificate.summary_lines()) + "\n"
        (directory / CERTIFICATE_FILE).write_text(text, encoding="utf-8", newline="\n")
        return CERTIFICATE_FILE

    def _write_plots(self, trace: SimTrace, directory: Path) -> list[str]:
        columns = trace.columns()
        names = []
        for stem, (prefix, label, title) in PLOTS.items():
            figure, axis = plt.subplots(figsize=(7.0, 4.0))
            try:
                for name, values in columns.items():
                    if name.startswith(prefix):
                        axis.plot(columns["t"], values, linewidth=1.0, label=name)
                axis.set_xlabel("t (s)")
                axis.set_ylabel(label)
                axis.set_title(title)
                axis.grid(True, alpha=0.3)
                axis.legend(fontsize="x-small", ncol=2)
                name = f"{stem}.{self._plot_format}"
                metadata = {"Date": None} if self._plot_format == "svg" else None
                figure.savefig(directory / name, format=self._plot_format, metadata=metadata)
                names.append(name)
            finally:
                plt.close(figure)
        return names
