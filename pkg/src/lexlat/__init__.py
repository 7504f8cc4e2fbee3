"""Exact computations in lexicographic vector lattices Lex(X) over forests,
their ideal lattices and local projections, and the root-function lattices
R_S(K)."""

from .errors import *  # noqa: F401,F403
from .ideals import (
    carrier,
    classify_ideal,
    enumerate_ideals,
    ideal_membership,
    lex_classification,
    min_primes_finite_codim,
    prime_spectrum,
    principal_ideal,
    quotient_poset,
    radical,
)
from .lex import (
    LexElement,
    basis,
    inf,
    is_archimedean,
    is_positive,
    lattice_leq,
    min_support,
    pos_part,
    riesz_decompose,
    sup,
    zero,
)
from .local import (
    ProjectionTable,
    coordinate_functional,
    cut,
    decompose_principal,
    local_ideals,
    local_projection,
    representation,
    verify_compatibility,
)
from .poset import (
    ForestPoset,
    OmegaChain,
    OmegaStarChain,
    SymbolicPoset,
    UpperSet,
    ZetaChain,
    antichain,
    chain,
    classify_poset,
    leq,
    min_of_subset,
    up_closure,
    validate_forest,
    well_founded_recursion,
)
from .roots import (
    ExponentSet,
    Germ,
    GridK,
    RootFunction,
    classify_RS,
    embed_total_order,
    in_P0,
    psi,
    rf_abs,
    rf_add,
    rf_inf,
    rf_scale,
    rf_sup,
    spectrum_RS,
)

__version__ = "0.1.0"
