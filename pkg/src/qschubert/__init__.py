"""Exact canonical bases of quantum Schubert cells.

Everything is computed over Z[v, v^-1] (v = q^(1/2)) and its fraction
field; no floating point anywhere.  See the README for a tour.
"""

from .coeff import LaurentScalar, RatScalar
from .rootdata import PRESET_NAMES, ReducedWord, RootDatum, make_reduced_word, preset
from .freealg import NcElement
from .pbw import PBWFrame, PBWVector
from .canon import (CanonicalElement, bi_schubert, check_embedding,
                    check_Ti_stability, closed_form_basis, compare_frames,
                    lusztig_solve, string_name, verify_upper_global)

__version__ = "0.1.0"

__all__ = [
    "LaurentScalar", "RatScalar", "RootDatum", "ReducedWord", "preset",
    "make_reduced_word", "PRESET_NAMES", "NcElement", "PBWFrame", "PBWVector",
    "CanonicalElement", "lusztig_solve", "verify_upper_global", "string_name",
    "compare_frames", "check_Ti_stability", "check_embedding", "bi_schubert",
    "closed_form_basis", "__version__",
]
