import logging

from ..base import BaseCommand
from ..pipeline import bound_report, field_report, load_field
from ..schemas import RunReport

logger = logging.getLogger(__name__)


class BoundsCommand(BaseCommand):
    """Every closed-form bound for one field; A is taken from the discriminant since nothing is enumerated."""

    def run(self) -> int:
        field, lattice = load_field(self._config)
        report = RunReport(field=field_report(field, lattice), bounds=bound_report(field, lattice, self._config))
        self._deliver(report)
        return 0
