"""Parsing, command dispatch and report emission."""

from .grammar import InputDocument, format_form, parse_input, tokenize
from .main import build_parser, main
from .reports import COMMANDS, Options, emit_dot, emit_json, emit_text, number, render, run_command

__all__ = [
    "COMMANDS",
    "InputDocument",
    "Options",
    "build_parser",
    "emit_dot",
    "emit_json",
    "emit_text",
    "format_form",
    "main",
    "number",
    "parse_input",
    "render",
    "run_command",
    "tokenize",
]
