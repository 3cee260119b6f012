"""Book representations of the complete graph K6: moves, classification and
knot/link censuses."""

from .census import Census, aggregate_stats, census, census_signature, chirality, verify_appendix
from .diagram import build_knot_diagram, build_link_diagram
from .equivalence import classify_all, equivalent, min_sheet_number, orbit
from .estimators import BookRepClassifier, CensusTransformer, check_reps
from .graph import Cycle, DomainError, Edge, TrianglePair
from .invariants import KnotType, LinkType, classify_knot, classify_link, jones, kauffman_bracket
from .model import BookRep, ParseError, config, parse, serialize, validate
from .moves import mirror

__all__ = [
    "BookRep", "BookRepClassifier", "Census", "CensusTransformer", "Cycle", "DomainError",
    "Edge", "KnotType", "LinkType", "ParseError", "TrianglePair", "aggregate_stats",
    "build_knot_diagram", "build_link_diagram", "census", "census_signature", "check_reps",
    "chirality", "classify_all", "classify_knot", "classify_link", "config", "equivalent",
    "jones", "kauffman_bracket", "min_sheet_number", "mirror", "orbit", "parse", "serialize",
    "validate", "verify_appendix",
]
