"""Frame decompositions of symmetric tensors.

A symmetric tensor is fradeco if it is a weighted sum of d-th powers of the
columns of a finite unit norm tight frame (funtf). The package samples
funtfs, decomposes binary forms and ternary quartics, computes robust
eigenvectors, and explores fradeco varieties numerically.
"""
from .binary import RankReport, build_Mr, decompose, decompose_binary, fradeco_rank, rank_report
from .decomposition import (
    Decomposition,
    VerificationReport,
    read_decomposition,
    verify_decomposition,
    write_decomposition,
)
from .equations import KNOWN_EQUATIONS, KnownEquation, eval_known_equation
from .errors import *  # noqa: F401,F403
from .funtf import (
    Frame,
    PlueckerVector,
    funtf_residual,
    multilinear_forms,
    pluecker,
    read_frame,
    sample_frame,
    sample_general,
    sample_planar,
    so3_orbit_frame,
    write_frame,
)
from .numrank import RankInfo, numerical_rank
from .power import EigenPoint, eigen_discriminant_binary, power_iterate, robust_eigenvectors
from .tensor import SymTensor, catalecticant, evaluate, gradient, read_symtensor, synthesize, write_symtensor
from .variety import (
    HilbertReport,
    expected_dim,
    hilbert_value,
    kernel_conic,
    tangent_dim,
    waring_frame_search,
)

__version__ = "0.1.0"
