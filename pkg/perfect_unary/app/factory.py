import logging

from ..forms.errors import ConfigurationError
from .base import BaseCommand
from .commands import BoundsCommand, EnumerateCommand, FieldInfoCommand, SweepCommand, VerifyCommand
from .config import RunConfig
from .ios.console import Console
from .ios.factory import build_io_devices
from .ios.files import SweepTable
from .schemas import SWEEP_COLUMNS, SWEEP_SUITES

logger = logging.getLogger(__name__)

COMMANDS = {
    "field-info": FieldInfoCommand,
    "bounds": BoundsCommand,
    "enumerate": EnumerateCommand,
    "verify": VerifyCommand,
}


def build_command(name: str, config: RunConfig) -> BaseCommand:
    if name == "sweep-quadratic":
        return SweepCommand(config, Console(), SweepTable(config.output, [*SWEEP_COLUMNS, *SWEEP_SUITES]))
    if name not in COMMANDS:
        raise ConfigurationError(f"Invalid command: {name}")
    message_device, report_device = build_io_devices(config.format, config.output)
    return COMMANDS[name](config, message_device, report_device)
