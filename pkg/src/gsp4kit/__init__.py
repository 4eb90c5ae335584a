"""gsp4kit: executable case analyses for subgroups of GSp(4) over finite
fields, maximally induced mod-l representations, prime-parameter searches,
and compatible-system screening."""

from .backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
