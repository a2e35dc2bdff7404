from .parser import build_parser, parse_args
from .reader import read_series
from .commands import run
