"""Exact Steiner-distance hypermatrices of trees and their resultant certificates."""

__version__ = "0.1.0"

from .forms import HomogeneousForm, evaluate, forms_equal_pit, monomials_of_degree
from .macaulay import (
    MacaulayResultantProblem,
    ResultantOutcome,
    assemble,
    conversion_factor,
    resultant_exact,
    resultant_nonzero_witness,
    resultant_zero_certify,
)
from .steiner import (
    GradientSystem,
    SteinerHypermatrix,
    build_hypermatrix,
    forced_candidate,
    gradient_system,
    steiner_distance,
    steiner_polynomial,
)
from .trees import (
    CanonicalCode,
    EdgeCut,
    SizeLimitError,
    Tree,
    canonical_code,
    edge_cut,
    enumerate_trees,
    parse_tree,
    path_tree,
    star_tree,
)

__all__ = [
    "__version__",
    "HomogeneousForm", "evaluate", "forms_equal_pit", "monomials_of_degree",
    "MacaulayResultantProblem", "ResultantOutcome", "assemble",
    "conversion_factor", "resultant_exact", "resultant_nonzero_witness",
    "resultant_zero_certify",
    "GradientSystem", "SteinerHypermatrix", "build_hypermatrix",
    "forced_candidate", "gradient_system", "steiner_distance",
    "steiner_polynomial",
    "CanonicalCode", "EdgeCut", "SizeLimitError", "Tree", "canonical_code",
    "edge_cut", "enumerate_trees", "parse_tree", "path_tree", "star_tree",
]
