from .commands import Request, run_decompose, run_maubach, run_oracle, run_perm, run_random_tame, run_sign, run_verify
from .grammar import format_map, format_poly, format_word, parse_map, parse_poly, parse_word
from .main import main

__all__ = [
    "Request", "main", "parse_map", "parse_poly", "parse_word", "format_map", "format_poly",
    "format_word", "run_sign", "run_oracle", "run_perm", "run_decompose", "run_random_tame",
    "run_verify", "run_maubach",
]
