import logging
from typing import Any, Optional

try:
    from termcolor._types import Color
except ImportError:  # termcolor>=3 no longer ships the private _types module
    Color = str

from ..schemas import RunReport
from .base import MessageDevice, ReportDevice
from .utility import STATUS_COLORS, format_number, modify_logger_behaviour

logger = logging.getLogger(__name__)


class Console(MessageDevice, ReportDevice):
    """Coloured human summary of a run on the console."""

    def __init__(self):
        self.logger = modify_logger_behaviour(__name__)

    def deliver_message(self, objects: Any, color: Optional[Color] = None) -> None:
        self.logger.info(objects, extra={"color": color})

    def deliver_report(self, report: RunReport) -> None:
        field = report.field
        self.deliver_message(f"Field {field.polynomial}", color="yellow")
        if field.order_discriminant_only:
            self.deliver_message("  (discriminant of the equation order; no integral basis supplied)", color="yellow")
        regulator = format_number(field.regulator)
        self.deliver_message(f"  n = {field.degree}, Delta = {field.discriminant}, R = {regulator}")
        self.deliver_message(f"  lambda = {', '.join(format_number(v) for v in field.successive_minima)}")
        if report.bounds is not None:
            bounds = report.bounds
            self.deliver_message("Bounds", color="yellow")
            self.deliver_message(
                f"  thm1 stated/proof = {format_number(bounds.thm1_stated)} / {format_number(bounds.thm1_proof)}"
            )
            self.deliver_message(
                f"  thm2 stated/proof = {format_number(bounds.thm2_stated)} / {format_number(bounds.thm2_proof)}"
            )
            self.deliver_message(f"  rho = {format_number(bounds.rho)}, A bound = {format_number(bounds.a_bound)}")
        if report.enumeration is not None:
            enumeration = report.enumeration
            color = "green" if enumeration.closure_complete else "red"
            self.deliver_message(
                f"Classes: n_K = {enumeration.n_K}, closure complete = {enumeration.closure_complete}", color=color
            )
        if report.checks is not None:
            for name, result in report.checks.suites.items():
                detail = f" ({result.detail})" if result.detail else ""
                self.deliver_message(f"  {name}: {result.status}{detail}", color=STATUS_COLORS[result.status])
