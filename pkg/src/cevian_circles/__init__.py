"""Numerical verification of identities about cevians and the circles they cut out.

A triangle ABC with an interior point P is split by the cevians AD, BE, CF
into six small triangles around P and six large triangles on the sides.  Their
incircles and excircles satisfy product and reciprocal-sum identities that
this package checks on random triangles, at several floating point widths,
with tangency of every constructed circle validated.
"""

from .catalog import CATALOG, Identity, IdentityReport, evaluate_identity, lemma_4_1_ratio
from .centers import CenterKind, Custom, cevian_triad
from .circles import Family, six_circles, subdivide
from .errors import GeometryError
from .geometry import Point, Triangle
from .harness import TrialSummary, oracle_crosschecks, permutation_search, run_suite, run_trials
from .invariants import ApexInvariantSpec, InvariantKind, invariant_scan
from .sampling import SamplerFamily, SamplerSpec, sample_triangle
from .scalar import EXACT, approx

__all__ = [
    "CATALOG",
    "EXACT",
    "ApexInvariantSpec",
    "CenterKind",
    "Custom",
    "Family",
    "GeometryError",
    "Identity",
    "IdentityReport",
    "InvariantKind",
    "Point",
    "SamplerFamily",
    "SamplerSpec",
    "Triangle",
    "TrialSummary",
    "approx",
    "cevian_triad",
    "evaluate_identity",
    "invariant_scan",
    "lemma_4_1_ratio",
    "oracle_crosschecks",
    "permutation_search",
    "run_suite",
    "run_trials",
    "sample_triangle",
    "six_circles",
    "subdivide",
]
