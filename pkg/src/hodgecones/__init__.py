"""Exact computations in the Hodge-class algebra of abelian-variety self-products.

The package computes, over exact rationals: the generators and relations of
the cycle-class algebra of A^e (A a very general principally polarized
abelian variety), intersection numbers via a brute-force form oracle, the
block-matrix representations of the associated symmetric forms for e = 2,
and membership certificates for the semipositive cone together with
extremal-ray machinery for products of pseudoeffective divisor classes.
"""

from .algebra import (
    ClassPoly,
    GeneratorId,
    gl_action,
    hodge_dimension,
    multiply,
    normal_form,
    pullback_along_projection,
    relation_generators,
)
from .cones import (
    SemiCertificate,
    divisor_is_nef,
    mu_class,
    mu_top_coefficient,
    nef_sampled_check,
    sample_Ek,
    semi4_extremal_decompose,
    semi_membership,
)
from .forms import (
    Form,
    class_to_form,
    hermitian_matrix,
    intersection_number_formula,
    is_psd_exact,
    top_pairing,
)
from .linalg import SymMatrix
from .rep2 import BlockMap, block_map, bprime_matrix, hermite_span_dim
from .schur import (
    enumerate_hodge_diagrams,
    schur_dim,
    tensor_power_decomposition,
    wedge_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "BlockMap",
    "ClassPoly",
    "Form",
    "GeneratorId",
    "SemiCertificate",
    "SymMatrix",
    "__version__",
    "block_map",
    "bprime_matrix",
    "class_to_form",
    "divisor_is_nef",
    "enumerate_hodge_diagrams",
    "gl_action",
    "hermite_span_dim",
    "hermitian_matrix",
    "hodge_dimension",
    "intersection_number_formula",
    "is_psd_exact",
    "mu_class",
    "mu_top_coefficient",
    "multiply",
    "nef_sampled_check",
    "normal_form",
    "pullback_along_projection",
    "relation_generators",
    "sample_Ek",
    "schur_dim",
    "semi4_extremal_decompose",
    "semi_membership",
    "tensor_power_decomposition",
    "top_pairing",
    "wedge_decomposition",
]
