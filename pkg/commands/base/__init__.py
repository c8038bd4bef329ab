# Base command package
from commands.base.base_command import BaseCommand, parse_matrix, parse_range

__all__ = ["BaseCommand", "parse_matrix", "parse_range"]
