"""Executable combinatorics of Baumslag-Solitar positive monoids."""

from .errors import *  # noqa: F401,F403
from .words import (  # noqa: F401
    BSParams,
    GenWord,
    PathL,
    PathR,
    Variant,
    compose,
    from_form_r,
    height,
    normalize,
    parse_word,
    path,
    to_form_r,
)

__version__ = "0.1.0"
