"""Run batch use case."""

from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor

from src.modules.simulation.domain.scenario_config import ScenarioConfig
from src.modules.simulation.domain.trace import RunCertificate
from src.shared.utils.logger import Logger

ScenarioWorker = Callable[[ScenarioConfig], RunCertificate]


class RunBatchUseCase:
    """
    Use case for running independent scenarios concurrently.

    The worker must be a module-level function so it can be sent to worker
    processes; runs share nothing but their immutable configs. Results keep
    the order of the input configs.
    """

    def __init__(self, worker: ScenarioWorker, max_workers: int | None = None) -> None:
        self._worker = worker
        self._max_workers = max_workers
        self._logger = Logger("USE_CASE:RUN_BATCH")

    def execute(self, configs: list[ScenarioConfig]) -> list[RunCertificate]:
        """
        Raises:
            DomainError: The first error raised by any run
        """
        self._logger.info("Running batch", extra={"runs": len(configs), "max_workers": self._max_workers})
        if not configs:
            return []
        if self._max_workers == 1 or len(configs) == 1:
            certificates = [self._worker(config) for config in configs]
        else:
            with ProcessPoolExecutor(max_workers=self._max_workers) as pool:
                certificates = list(pool.map(self._worker, configs))
        self._logger.info(
            "Batch finished",
            extra={"converged": sum(certificate.converged for certificate in certificates)},
        )
        return certificates
