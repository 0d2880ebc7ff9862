"""Free knots and links given by Gauss codes: moves, parities, brackets,
cobrackets and the two-fold covering."""

from .diagram import LinkDiagram, canonicalize, parse_gauss, serialize
from .errors import FreeLinkError

__all__ = ["LinkDiagram", "FreeLinkError", "canonicalize", "parse_gauss", "serialize"]
__version__ = "0.1.0"
