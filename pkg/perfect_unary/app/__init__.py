from .factory import build_command

__all__ = ("build_command",)
