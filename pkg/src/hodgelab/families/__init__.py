"""Period-vector families: prepotential, Picard-Fuchs and nilpotent-orbit models."""

from .symplectic import SymplecticForm
from .base import FamilyModel
from .prepotential import PrepotentialModel, prepotential_periods
from .orbit import NilpotentOrbitModel, nilpotent_orbit_eval
from .picard_fuchs import (FrobeniusBasis, PFOperator, PicardFuchsModel, frobenius_residual,
                           pf_frobenius_mum, quintic_operator)
from .validation import PointValidation, ValidationReport, validate_model, validate_point
from .io import ModelFileError, load_model, model_from_dict, preset_names

__all__ = [
    "SymplecticForm", "FamilyModel", "PrepotentialModel", "prepotential_periods",
    "NilpotentOrbitModel", "nilpotent_orbit_eval", "FrobeniusBasis", "PFOperator",
    "PicardFuchsModel", "pf_frobenius_mum", "frobenius_residual", "quintic_operator",
    "PointValidation", "ValidationReport", "validate_model", "validate_point",
    "ModelFileError", "load_model", "model_from_dict", "preset_names",
]
