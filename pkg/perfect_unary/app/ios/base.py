from typing import Any, Optional, Protocol, runtime_checkable

from ..schemas import RunReport


@runtime_checkable
class MessageDevice(Protocol):
    def deliver_message(self, objects: Any, color: Optional[str] = None) -> None:
        pass


@runtime_checkable
class ReportDevice(Protocol):
    def deliver_report(self, report: RunReport) -> None:
        pass


@runtime_checkable
class RowDevice(Protocol):
    def completed(self) -> set[int]:
        pass

    def deliver_row(self, row: dict[str, Any]) -> None:
        pass
