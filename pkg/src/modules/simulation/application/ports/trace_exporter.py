"""Trace exporter interface (port)."""

from abc import ABC, abstractmethod
from pathlib import Path

from src.modules.simulation.domain.trace import RunCertificate, SimTrace


class TraceExporter(ABC):
    """Writes a finished run to durable files."""

    @abstractmethod
    def export(
        self,
        trace: SimTrace,
        certificate: RunCertificate,
        directory: Path,
        plot: bool = False,
    ) -> list[Path]:
        """
        Write trace.csv and certificate.txt, plus voltage/current/u_l plots when requested.

        Either every file is written or none is.

        Returns:
            Paths of the written files

        Raises:
            ExportError: If the trace is empty or a file cannot be written
        """
        pass
