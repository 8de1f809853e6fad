"""Exact computations with the twisted Heisenberg-Virasoro algebra, the gap-p
Virasoro algebras and their weight and twisted modules."""

from .algebra import (
    MIRROR,
    THV,
    Algebra,
    AlgebraError,
    LieElement,
    bracket_G,
    bracket_M,
    bracket_T,
    gap,
    hom_check,
    jacobi_check,
    mirror_iso,
)
from .enveloping import UEElement, UEWord, omega_build, omega_recursion_check, theta_image, ue_apply
from .report import CheckReport
from .restricted import AnnLevel, Formal, OneDim, Whittaker, ann_level
from .scalars import BACKEND, GaussianRational, parse_scalar
from .weightmod import (
    GapParams,
    IntermediateG,
    IntermediateT,
    MirrorIS,
    TensorG,
    TensorProduct,
    TensorT,
    Twisted,
    Verma,
    WeightVector,
    module_from_json,
)

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "AlgebraError",
    "AnnLevel",
    "BACKEND",
    "CheckReport",
    "Formal",
    "GapParams",
    "GaussianRational",
    "IntermediateG",
    "IntermediateT",
    "LieElement",
    "MIRROR",
    "MirrorIS",
    "OneDim",
    "THV",
    "TensorG",
    "TensorProduct",
    "TensorT",
    "Twisted",
    "UEElement",
    "UEWord",
    "Verma",
    "WeightVector",
    "Whittaker",
    "ann_level",
    "bracket_G",
    "bracket_M",
    "bracket_T",
    "gap",
    "hom_check",
    "jacobi_check",
    "mirror_iso",
    "module_from_json",
    "omega_build",
    "omega_recursion_check",
    "parse_scalar",
    "theta_image",
    "ue_apply",
]
