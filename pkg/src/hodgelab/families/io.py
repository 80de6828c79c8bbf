"""Model definition files (JSON) and the bundled presets.

Schema::

    {"type": "prepotential" | "pf_mum" | "nilpotent_orbit",
     "name": str,
     "n": int,                              # prepotential only
     "coefficients": [...],                 # prepotential: [[exponent, value], ...]
                                            # pf_mum: theta-polynomial per power of z
     "N": [[...]], "A_series": [[...]],     # nilpotent_orbit
     "radius": float,                       # nilpotent_orbit, optional
     "truncation": int,                     # pf_mum, optional
     "domain": {"re": [[lo, hi], ...], "im": [[lo, hi], ...]}}

Complex numbers are written either as plain numbers or as ``[re, im]``.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import numpy as np

from ..errors import HodgeLabError, StructureError
from .base import FamilyModel
from .orbit import NilpotentOrbitModel
from .picard_fuchs import PFOperator, PicardFuchsModel
from .prepotential import PrepotentialModel


class ModelFileError(HodgeLabError):
    """A model definition could not be parsed."""


def _complex(x) -> complex:
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ModelFileError(f"complex numbers are [re, im], got {x!r}")
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, (int, float)):
        return complex(x)
    raise ModelFileError(f"not a number: {x!r}")


def _vector(row) -> list:
    return [_complex(x) for x in row]


def _require(spec: dict, key: str):
    if key not in spec:
        raise ModelFileError(f"model definition lacks {key!r}")
    return spec[key]


def model_from_dict(spec: dict) -> FamilyModel:
    """Build a model from a parsed definition."""
    if not isinstance(spec, dict):
        raise ModelFileError("model definition must be a JSON object")
    kind = _require(spec, "type")
    name = spec.get("name", kind)
    try:
        if kind == "prepotential":
            coeffs = {}
            for item in _require(spec, "coefficients"):
                exponent, value = item
                coeffs[tuple(int(a) for a in exponent)] = _complex(value)
            n = int(spec.get("n", len(next(iter(coeffs))) if coeffs else 1))
            return PrepotentialModel(coeffs, n=n, domain=spec.get("domain"), name=name)
        if kind == "pf_mum":
            polys = [[int(c) if float(c).is_integer() else float(c) for c in p]
                     for p in _require(spec, "coefficients")]
            return PicardFuchsModel(PFOperator(polys), truncation=int(spec.get("truncation", 60)),
                                    name=name)
        if kind == "nilpotent_orbit":
            N = np.array(_require(spec, "N"))
            A = np.array([_vector(row) for row in _require(spec, "A_series")])
            return NilpotentOrbitModel(N, A, radius=float(spec.get("radius", 1.0)), name=name)
    except StructureError:
        raise
    except (TypeError, ValueError, KeyError, StopIteration) as exc:
        raise ModelFileError(f"malformed {kind} definition: {exc}") from exc
    raise ModelFileError(f"unknown model type {kind!r}")


def preset_names() -> list:
    root = resources.files("hodgelab.families") / "presets"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_preset_dict(name: str) -> dict:
    path = resources.files("hodgelab.families") / "presets" / f"{name}.json"
    if not path.is_file():
        raise ModelFileError(f"no preset named {name!r}; known: {', '.join(preset_names())}")
    return json.loads(path.read_text())


def load_model(source) -> FamilyModel:
    """Load a model from a dict, a JSON file path or a preset name."""
    if isinstance(source, dict):
        return model_from_dict(source)
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        try:
            spec = json.loads(path.read_text())
        except FileNotFoundError as exc:
            raise ModelFileError(f"model file {path} not found") from exc
        except json.JSONDecodeError as exc:
            raise ModelFileError(f"{path}: invalid JSON ({exc})") from exc
        return model_from_dict(spec)
    return model_from_dict(load_preset_dict(str(source)))


__all__ = ["ModelFileError", "model_from_dict", "load_model", "preset_names", "load_preset_dict"]
