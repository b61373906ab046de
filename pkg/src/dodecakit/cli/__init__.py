"""Command line interface."""

from .config import Config, ConfigError, load_config, parse_config
from .main import build_parser, main
from .report import RunReport, file_digest, inputs_digest

__all__ = ["Config", "ConfigError", "RunReport", "build_parser", "file_digest",
           "inputs_digest", "load_config", "main", "parse_config"]
