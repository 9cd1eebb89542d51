import logging

from ..base import BaseCommand
from ..pipeline import exit_status, load_field, verify_field

logger = logging.getLogger(__name__)


class EnumerateCommand(BaseCommand):
    _oracles = False

    def run(self) -> int:
        field, lattice = load_field(self._config)
        report, limit_hit = verify_field(field, lattice, self._config, oracles=self._oracles)
        self._deliver(report)
        if report.checks is not None and report.checks.failed:
            logger.error(f"failed suites: {', '.join(report.checks.failed)}")
        return exit_status(report.checks, limit_hit)


class VerifyCommand(EnumerateCommand):
    """Enumeration plus the brute-force, Hermite-constant and Gamma oracles."""

    _oracles = True
