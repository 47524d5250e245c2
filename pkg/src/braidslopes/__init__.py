"""Certified slope intervals for positive braid closures.

The library certifies, for positive 3-braid knots and 1-bridge braids, the
combinatorial data behind the taut-foliation construction: the reduced braid
form and fiber genus, the product-disk selection and cusping schema,
sink-disk-freeness of the resulting branched surface, the linked-arc census,
and the interval of boundary slopes carried by the induced train track.
"""

__version__ = "0.1.0"

from .braid_core import (
    Blocks,
    BraidClass,
    BraidError,
    BraidParseError,
    BraidWord,
    GenusData,
    NormalizationError,
    NotAKnotError,
    OneBridgeBraid,
    ReducedTorus,
    Unknot,
    braid_of_1bridge,
    classify,
    closure_component_count,
    genus_1bridge,
    genus_3braid,
    normalize_3braid,
    parse_braid,
)
from .certificate import (
    analyze_1bridge,
    analyze_3braid,
    analyze_braid_text,
    certificate,
    to_json,
)

__all__ = [
    "Blocks",
    "BraidClass",
    "BraidError",
    "BraidParseError",
    "BraidWord",
    "GenusData",
    "NormalizationError",
    "NotAKnotError",
    "OneBridgeBraid",
    "ReducedTorus",
    "Unknot",
    "analyze_1bridge",
    "analyze_3braid",
    "analyze_braid_text",
    "braid_of_1bridge",
    "certificate",
    "classify",
    "closure_component_count",
    "genus_1bridge",
    "genus_3braid",
    "normalize_3braid",
    "parse_braid",
    "to_json",
]
