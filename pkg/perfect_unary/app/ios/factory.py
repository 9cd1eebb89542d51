from pathlib import Path
from typing import Optional

from ...forms.errors import ConfigurationError
from .base import MessageDevice, ReportDevice
from .console import Console
from .files import CsvWriter, JsonWriter


def build_io_devices(fmt: str, output: Optional[Path] = None) -> tuple[MessageDevice, ReportDevice]:
    if fmt.lower() == "json":
        writer = JsonWriter(output)
    elif fmt.lower() == "csv":
        writer = CsvWriter(output)
    else:
        raise ConfigurationError(f"Invalid format: {fmt}")
    return Console(), writer
