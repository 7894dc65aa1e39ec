"""Whittaker modules over Q-graded Lie algebras, computed exactly on finite windows."""

from .algebra import (
    AlgebraError, AlgebraReport, C, GradedLieAlgebra, LieElement, QGoodError, SectorTable,
    WindowExceeded, X, builtin, classify_degrees, from_spec, to_spec, validate_algebra,
    virasoro, w22,
)
from .analysis import (
    AnnihilatorReport, DetectedIdeal, GenerationError, SimplesVerdict, SolveWindow,
    WhittakerSolution, WitnessStall, WitnessTrace, annihilator_check, check_generation,
    default_probes, distinguish_simples, is_whittaker, simplicity_witness, solve_whittaker,
    submodule_ideal,
)
from .exactmath import CentralPoly, IdealSpec, SparseMatrix, format_rational, kernel, reduce_poly
from .grading import Degree, DimensionError, GradingMap, Ordering, compare, validate_grading_map
from .pbw import (
    Partition, UElement, commutator_monomial, enumerate_basis, monomial_product, multiply,
    phi_component,
)
from .syntax import ParseError, parse_character, parse_element, parse_ideal, parse_vector
from .whittaker import (
    Character, CharacterError, ModuleVector, NonsingularityReport, VectorStats, WhittakerModule,
    act, make_character, make_module, nonsingularity_report, substitution_ideal, vector_stats,
)

__version__ = "0.1.0"
