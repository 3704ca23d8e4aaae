"""CLI interface for hetsqueeze."""

from .commands import main, parse_config, run

__all__ = ["main", "parse_config", "run"]
