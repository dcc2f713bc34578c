"""Blowups of hypersurface singularities in MCM modules."""

from .charts import dehomogenize, rees_charts, rees_kernel, simplify_chart
from .fibre import ExceptionalFibre, exceptional_fibre, fibre_dimension, fibre_ideal
from .fractional import DEFAULT_SEARCH_DEGREE, Equivalence, fractional_equivalent
from .ideals import base_change_fibre, normalize_gens, section_ideal, villamayor_ideal
from .singular import (
    NonIsolatedSingularity,
    RDPClass,
    blowup_singularities,
    classify_point,
    classify_rdp,
    local_equation,
    singular_locus,
    singularity_labels,
)
from .types import (
    BlowupChart,
    BlowupError,
    BlowupIdeal,
    ChartModel,
    HypersurfaceSingularity,
    SingularityReport,
    SingularPoint,
)

__all__ = [
    "DEFAULT_SEARCH_DEGREE",
    "BlowupChart",
    "BlowupError",
    "BlowupIdeal",
    "ChartModel",
    "Equivalence",
    "ExceptionalFibre",
    "HypersurfaceSingularity",
    "NonIsolatedSingularity",
    "RDPClass",
    "SingularPoint",
    "SingularityReport",
    "base_change_fibre",
    "blowup_singularities",
    "classify_point",
    "classify_rdp",
    "dehomogenize",
    "exceptional_fibre",
    "fibre_dimension",
    "fibre_ideal",
    "fractional_equivalent",
    "local_equation",
    "normalize_gens",
    "rees_charts",
    "rees_kernel",
    "section_ideal",
    "simplify_chart",
    "singular_locus",
    "singularity_labels",
    "villamayor_ideal",
]
