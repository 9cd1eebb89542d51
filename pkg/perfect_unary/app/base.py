import logging
from abc import abstractmethod
from typing import Optional

from .config import RunConfig
from .ios.base import MessageDevice, ReportDevice
from .schemas import RunReport

logger = logging.getLogger(__name__)


class BaseCommand:
    _config: RunConfig
    _message_device: MessageDevice
    _report_device: Optional[ReportDevice]

    def __init__(self, config: RunConfig, message_device: MessageDevice, report_device: Optional[ReportDevice] = None):
        self._config = config
        self._message_device = message_device
        self._report_device = report_device

    def _deliver(self, report: RunReport) -> None:
        if self._report_device is not None:
            self._report_device.deliver_report(report)
        if hasattr(self._message_device, "deliver_report"):
            self._message_device.deliver_report(report)

    @abstractmethod
    def run(self) -> int:
        raise NotImplementedError('Method "run" must be implemented in the child class')
