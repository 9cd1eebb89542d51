from .bounds import BoundsCommand
from .enumerate import EnumerateCommand, VerifyCommand
from .field_info import FieldInfoCommand
from .sweep import SweepCommand

__all__ = ("BoundsCommand", "EnumerateCommand", "FieldInfoCommand", "SweepCommand", "VerifyCommand")
