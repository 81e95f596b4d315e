"""Exponentiability of functors between categories enriched in a finite quantaloid.

The package decides exponentiability via two elementary lattice conditions,
builds partial products and slice exponentials when they exist, and ships an
independent brute-force oracle that validates every construction against the
universal property on a family of small probe categories.
"""

from .lattice import (
    FiniteLattice,
    MalformedInput,
    MonotoneMap,
    NotSupPreserving,
    chain_lattice,
    is_sup_preserving,
    m3_lattice,
    n5_lattice,
    powerset_lattice,
    right_adjoint_of,
)
from .quantaloid import (
    Monoid,
    NonComposable,
    QArrow,
    Quantaloid,
    boolean_quantale,
    chain_quantale,
    compose,
    cyclic_monoid,
    endo_quantale,
    extension,
    free_quantaloid_on_graph,
    lifting,
    powerset_monoid_quantale,
    verify_quantaloid,
)
from .category import (
    QCategory,
    QDistributor,
    QFunctor,
    QMatrix,
    arrow_category,
    collage,
    compose_distributors,
    cospan_distributor,
    enumerate_functors,
    fiber,
    identity_functor,
    one_object,
    point,
    pullback,
    terminal,
    triple_collage,
    verify_category,
    verify_distributor,
    verify_functor,
)
from .exponentiable import (
    AdjointMissing,
    ConditionReport,
    ConditionViolated,
    OutOfDownset,
    PartialProduct,
    SliceExponential,
    check_condition_one,
    check_condition_two,
    check_hat_lax,
    check_sharp_lax,
    hat,
    is_exponentiable,
    mediating,
    partial_product,
    sharp,
    slice_exponential,
)

__all__ = [name for name in dir() if not name.startswith("_")]
