"""Weil-Petersson and Hodge metric geometry of Calabi-Yau threefold moduli."""

from .errors import HodgeLabError
from .families import (NilpotentOrbitModel, PicardFuchsModel, PrepotentialModel, SymplecticForm,
                       load_model, preset_names, validate_model)
from .hodge import ANCHORS, alpha, hodge_metric, hodge_report
from .degeneration import yukawa_limit_scan
from .wp import normal_frame, wp_geometry, yukawa_data

# Results that need the Ricci-flat metric on the threefold itself. They are
# not computed; the listed checks cover what they imply for the moduli metric.
OUT_OF_SCOPE = {
    "L4-sectional-curvature-constant": {
        "reason": "sup-norm curvature bound through L^4 norms of harmonic (2,1)-forms",
        "covered_by": (ANCHORS["a_bound"], ANCHORS["b_bound"], ANCHORS["scalar"]),
    },
    "green-operator-yukawa-derivative": {
        "reason": "covariant Yukawa derivative written with the Green operator on the threefold",
        "covered_by": (ANCHORS["symmetry"], ANCHORS["b_bound"]),
    },
}

__all__ = [
    "ANCHORS",
    "OUT_OF_SCOPE",
    "HodgeLabError",
    "NilpotentOrbitModel",
    "PicardFuchsModel",
    "PrepotentialModel",
    "SymplecticForm",
    "alpha",
    "hodge_metric",
    "hodge_report",
    "load_model",
    "normal_frame",
    "preset_names",
    "validate_model",
    "wp_geometry",
    "yukawa_data",
    "yukawa_limit_scan",
]
