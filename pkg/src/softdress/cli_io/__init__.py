"""Batch front-end: configuration, subcommand execution and serialization."""

from softdress.cli_io.config import RunConfig, parse_config
from softdress.cli_io.fields import read_field_sample, write_field_sample
from softdress.cli_io.runner import SUBCOMMANDS, run
from softdress.cli_io.tables import ResultTable, read_output, write_output

__all__ = ["RunConfig", "ResultTable", "SUBCOMMANDS", "parse_config", "read_field_sample",
           "read_output", "run", "write_field_sample", "write_output"]
