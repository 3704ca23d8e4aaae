"""CSV output of result tables."""

from .result_storage import ResultStorage, format_value

__all__ = ["ResultStorage", "format_value"]
