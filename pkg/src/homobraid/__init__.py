"""Primeness of homogeneous braid closures via trees of open books."""

from .braids import BraidWord, parse_word, render_word
from .primeness import prime_factorization, primeness_verdict

__all__ = ["BraidWord", "parse_word", "render_word", "prime_factorization", "primeness_verdict"]
