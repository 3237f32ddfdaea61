from .main import build_parser, main, run
from .output import CommandResult, OutputFormat, format_float, render, render_json


__all__ = ["CommandResult", "OutputFormat", "build_parser", "format_float", "main", "render", "render_json", "run"]
