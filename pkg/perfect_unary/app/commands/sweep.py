import logging
from typing import Any

from ...forms.errors import ConfigurationError
from ...forms.field_core import is_squarefree
from ..base import BaseCommand
from ..config import RunConfig
from ..ios.base import MessageDevice, RowDevice
from ..ios.utility import STATUS_COLORS
from ..pipeline import exit_status, load_field, verify_field
from ..schemas import VerificationRecord

logger = logging.getLogger(__name__)


def squarefree_range(dmax: int) -> list[int]:
    return [d for d in range(2, dmax + 1) if is_squarefree(d)]


def sweep_row(d: int, record: VerificationRecord, status: str) -> dict[str, Any]:
    row: dict[str, Any] = {
        "d": d,
        "delta": record.delta,
        "regulator": record.regulator,
        "n_K": record.n_K,
        "closure_complete": record.closure_complete,
        "thm1_stated": record.thm1_stated,
        "thm1_proof": record.thm1_proof,
        "thm2_stated": record.thm2_stated,
        "thm2_proof": record.thm2_proof,
        "empirical_a": record.empirical_a,
        "a_bound": record.a_bound,
        "status": status,
    }
    row.update({name: result.status for name, result in record.suites.items()})
    return row


class SweepCommand(BaseCommand):
    """One verification row per squarefree d in [2, dmax]; rows already in the table are skipped."""

    _row_device: RowDevice

    def __init__(self, config: RunConfig, message_device: MessageDevice, row_device: RowDevice):
        super().__init__(config, message_device)
        self._row_device = row_device

    def _run_row(self, d: int) -> tuple[dict[str, Any], int]:
        try:
            field, lattice = load_field(self._config, quadratic=d)
            report, limit_hit = verify_field(field, lattice, self._config, seed=[self._config.seed, d])
        except Exception as err:  # noqa: BLE001
            logger.exception(f"d = {d} failed")
            return {"d": d, "status": "error", "error": f"{type(err).__name__}: {err}"}, 4
        code = exit_status(report.checks, limit_hit)
        status = {0: "ok", 3: "limit", 4: "failed"}[code]
        return sweep_row(d, report.checks, status), code

    def run(self) -> int:
        if self._config.dmax is None:
            raise ConfigurationError("sweep-quadratic needs --dmax")
        done = self._row_device.completed()
        codes = []
        for d in squarefree_range(self._config.dmax):
            if d in done:
                logger.info(f"d = {d} already in the table; skipped")
                continue
            row, code = self._run_row(d)
            codes.append(code)
            self._row_device.deliver_row(row)
            color = STATUS_COLORS["pass" if code == 0 else "skipped" if code == 3 else "fail"]
            self._message_device.deliver_message(f"d = {d}: n_K = {row.get('n_K')}, {row['status']}", color=color)
        if 4 in codes:
            return 4
        return 3 if 3 in codes else 0
