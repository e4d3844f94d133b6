"""Rule-based normalisation of English temporal expressions to TIMEX3."""

from .engine import Catalog, NoRuleFired, NormalisationResult, RuleLayer
from .model import Dct, TimexType, parse_dct, parse_value, render_value
from .rules import load_catalog, load_default_catalog


def normalise(text, dct=None):
    """Normalise ``text`` with the default catalog.

    ``dct`` may be a :class:`Dct` or a corpus-format string.
    """
    if isinstance(dct, str):
        dct = parse_dct(dct)
    return load_default_catalog().normalise(text, dct)


__all__ = [
    "Catalog", "Dct", "NoRuleFired", "NormalisationResult", "RuleLayer", "TimexType",
    "load_catalog", "load_default_catalog", "normalise", "parse_dct", "parse_value",
    "render_value",
]
__version__ = "0.1.0"
