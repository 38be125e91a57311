"""Exact norms of Tsirelson-type spaces over compact families of finite sets."""

from .analysis import Analysis, analyze, check_analysis, split_initial_final
from .dual import dual_ball_enumerate
from .errors import (
    AnalysisError,
    CapExceeded,
    FunctionalError,
    HypothesisViolation,
    InvalidBlocks,
    ParseError,
    ThetaError,
    TsirelsonError,
)
from .family import (
    Explicit,
    FiniteRank,
    Schreier,
    SuccessiveBlocks,
    Union,
    contains,
    finite_set,
    is_admissible,
    parse_family,
    rank,
    truncate,
)
from .functional import Leaf, Node, eval_functional, validate_functional
from .lp import (
    ExponentPair,
    equivalence_constants,
    growth_probe,
    p_exponent,
    verify_step1,
    verify_step2,
    verify_step3,
    verify_step4,
)
from .norm import NormResult, norm_exact, norm_oracle
from .ordinal import OrdinalRank
from .report import InequalityReport
from .theta import Rational, RootForm, parse_theta
from .vector import SparseVector, parse_vector

__version__ = "0.1.0"
