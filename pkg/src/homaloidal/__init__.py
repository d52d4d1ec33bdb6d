"""Exact tools for deciding whether plane curves are homaloidal in any characteristic."""

from .arrangements import (
    LineArrangement,
    algebraic_check,
    classify_arrangement,
    combinatorial_d0,
    multiplicity_mz,
    near_pencil_test,
    singularity_profile,
    sweep_projective_plane,
)
from .errors import (
    BudgetExceeded,
    ConcurrentArrangement,
    FieldTooSmall,
    HomaloidalError,
    Inconclusive,
    InconsistencyError,
    InvalidField,
    NotDeterminantal,
    NotDivisible,
    NotZeroDimensional,
    PolySyntaxError,
    UndefinedMap,
)
from .families import FamilySpec, family_make
from .fields import QQ, FieldElement, FieldSpec, field_make
from .groebner import (
    GroebnerBasis,
    Ideal,
    SchemeMeasure,
    degree_zero_dim,
    eliminate,
    groebner,
    ideal_quotient,
    intersect,
    krull_dimension,
    normal_form,
    saturate,
)
from .kernel import BACKEND
from .polar import (
    HomaloidalVerdict,
    MultiDegree,
    PolarMap,
    fixed_component_free,
    graph_multidegree_via_sections,
    is_homaloidal,
    polar_map,
    projective_degrees,
    topological_degree,
)
from .poly import DEGREVLEX, LEX, MonomialOrder, Poly, Ring, partial_derivative, poly_parse
from .report import AnalysisReport, analyze
from .syzygy import (
    PresentationMatrix,
    fitting_ideal,
    minimal_presentation,
    naive_degrees,
    syzygies,
    tteCar_hypotheses,
)

__version__ = "0.1.0"
