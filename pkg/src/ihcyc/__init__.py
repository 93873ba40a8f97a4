"""Exact intersection homology of stratified simplicial complexes and
Hochschild / cyclic homology of finite-dimensional algebras."""

__version__ = "0.1.0"

from .exactalg import GradedComplex, RationalMatrix, betti, kernel_basis, rank, smith_normal_form
from .simplicial import SimplicialComplex
from .stratified import (
    FilteredComplex,
    Perversity,
    complement,
    intersection_betti,
    intersection_chain_complex,
    total_perversity,
    zero_perversity,
)
from .cyclic import (
    FiniteAlgebra,
    MixedComplex,
    connes_quotient_cyclic,
    cyclic_betti,
    hh_betti,
    mixed_from_algebra,
    mixed_from_cochain,
    periodic_betti,
    sbi_check,
)
from .control import ControlParams, perversity_from_control, pole_exponent, truncate_cochain
