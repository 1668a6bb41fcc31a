"""Export trace use case."""

from pathlib import Path

from src.modules.simulation.application.dtos import ExportTraceRequest
from src.modules.simulation.application.ports.trace_exporter import TraceExporter
from src.modules.simulation.domain.errors import ExportError
from src.shared.utils.logger import Logger


class ExportTraceUseCase:
    """Use case for writing a finished run to an output directory."""

    def __init__(self, exporter: TraceExporter) -> None:
        self._exporter = exporter
        self._logger = Logger("USE_CASE:EXPORT_TRACE")

    def execute(self, request: ExportTraceRequest) -> list[Path]:
        """
        Returns:
            Paths of the written files

        Raises:
            ExportError: If the trace is empty or writing fails
        """
        if request.trace.is_empty:
            raise ExportError("Cannot export an empty trace", str(request.directory))

        self._logger.info(
            "Exporting run",
            extra={"directory": str(request.directory), "samples": request.trace.sample_count, "plot": request.plot},
        )
        paths = self._exporter.export(request.trace, request.certificate, request.directory, request.plot)
        self._logger.info("Run exported", extra={"files": len(paths)})
        return paths
