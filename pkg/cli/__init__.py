"""CLI tools"""

from cli.formatter import OutputFormatter
from cli.main import cli

__all__ = ['cli', 'OutputFormatter']
