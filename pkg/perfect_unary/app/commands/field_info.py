import logging

from ..base import BaseCommand
from ..pipeline import field_report, load_field
from ..schemas import RunReport

logger = logging.getLogger(__name__)


class FieldInfoCommand(BaseCommand):
    """Degree, discriminant, integral basis, regulator, successive minima and embeddings of one field."""

    def run(self) -> int:
        field, lattice = load_field(self._config)
        self._deliver(RunReport(field=field_report(field, lattice)))
        return 0
