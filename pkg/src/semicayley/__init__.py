"""Exact spectra, splitting fields and integrality of quasi-abelian semi-Cayley digraphs."""

from .catalog import CATALOG_NAMES, catalog, catalog_group
from .chartable import Character, CharacterTable, char_on_multiset, character_table
from .cyclotomic import CycNum, GaloisAut, PrimeEmbedding, SqrtResult, sqrt_in_cyclotomic
from .digraph import (
    IMultisets,
    QuasiAbelianError,
    RadicalEigenvalue,
    SemiCayleyDigraph,
    adjacency_matrix,
    eigenvalues,
    i_multisets,
)
from .groups import FiniteGroup, GMultiset, GroupError, build_group, class_unions
from .splitting import (
    DegreeReport,
    SquareOptions,
    UndeterminedError,
    algebraic_degree,
    compute_T,
    degree_bcay,
    degree_cayley,
    is_integral,
    square_class_group,
)

__version__ = "0.1.0"
