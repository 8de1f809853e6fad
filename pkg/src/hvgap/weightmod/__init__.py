"""Weight modules over the twisted Heisenberg-Virasoro and gap-p algebras."""

from .base import Module, ModuleError, WeightVector
from .checks import (
    cyclic_span_probe,
    grading_check,
    iso_map_check,
    module_axiom_check,
    noniso_witness,
    specialization_G_check,
    specialization_T_check,
    weight_of,
)
from .omega import eq51_check, lemma35_module_check, lemma35_symbolic_check, omega_symbolic, prop52_separation
from .registry import module_from_json
from .tensor import (
    GapParams,
    IntermediateG,
    IntermediateT,
    MirrorIS,
    TensorG,
    TensorModule,
    TensorT,
    gate_conflicts,
    sigma_shift,
    thv_d_conflict,
)
from .verma import CutoffExceeded, TensorProduct, Twisted, Verma

__all__ = [
    "CutoffExceeded",
    "GapParams",
    "IntermediateG",
    "IntermediateT",
    "MirrorIS",
    "Module",
    "ModuleError",
    "TensorG",
    "TensorModule",
    "TensorProduct",
    "TensorT",
    "Twisted",
    "Verma",
    "WeightVector",
    "cyclic_span_probe",
    "eq51_check",
    "gate_conflicts",
    "grading_check",
    "iso_map_check",
    "lemma35_module_check",
    "lemma35_symbolic_check",
    "module_axiom_check",
    "module_from_json",
    "noniso_witness",
    "omega_symbolic",
    "prop52_separation",
    "sigma_shift",
    "specialization_G_check",
    "specialization_T_check",
    "thv_d_conflict",
    "weight_of",
]
