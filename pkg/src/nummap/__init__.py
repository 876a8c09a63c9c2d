"""Exact calculus of numerical (binomially polynomial) maps between free Z-modules."""
from .augment import (
    TruncPoly,
    UniversalFactor,
    chi_class,
    dev_class,
    one_plus_t_pow,
    psi_image,
    scalar_relation_class,
    trunc_add,
    trunc_mul,
    universal_factor,
)
from .errors import DomainError, SchemaError, ShapeError
from .multiset import MultiSet, enumerate_multisets, multi_binom, repeat_args
from .natural import (
    AlgebraHom,
    TensorElem,
    check_naturality,
    demo_counterexample,
    extend,
    hom_by_name,
)
from .numap import (
    DegreeReport,
    DegreeSample,
    MapOracle,
    NumTable,
    StrictTable,
    check_eq1,
    check_eq2,
    degree_of,
    deviate,
    eval_table,
    extract,
    numerical_to_strict_rational,
    strict_to_numerical,
    table_as_oracle,
    table_from_json,
    verify_degree,
)
from .ring import (
    INT_Z,
    Z,
    NumAlgebra,
    NumPoly,
    ProductRing,
    binom,
    interpolate,
    lemma_binomial,
    numpoly_binom,
    numpoly_eval,
    numpoly_mul,
    stirling2,
)

__version__ = "0.1.0"
