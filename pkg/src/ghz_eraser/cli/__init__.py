from .config import RunConfig, load_run_config, parse_run_config
from .main import build_parser, main

__all__ = ["RunConfig", "build_parser", "load_run_config", "main", "parse_run_config"]
