"""Instance files: JSON description of specs, states and transformations.

Also holds the number formatting shared by every JSON/CSV report.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any

import jsonschema
import numpy as np

from .spectra import BlockSpectrum, DenseState, EngineSpec, block_spectrum, weighted_spectrum

SIG_DIGITS = 12

_NUM_ARRAY = {"type": "array", "items": {"type": "number"}, "minItems": 1}
_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}, "minItems": 1}
_STATE = {
    "oneOf": [
        {
            "type": "object",
            "properties": {"kind": {"const": "diagonal"}, "p": _NUM_ARRAY},
            "required": ["kind", "p"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"kind": {"const": "dense"}, "re": _MATRIX, "im": _MATRIX},
            "required": ["kind", "re"],
            "additionalProperties": False,
        },
    ]
}

INSTANCE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "InstanceFile",
    "type": "object",
    "properties": {
        "beta": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}, "minItems": 2, "maxItems": 2},
        "h1": _NUM_ARRAY,
        "h2": _NUM_ARRAY,
        "state": _STATE,
        "final": _STATE,
        "h1_final": _NUM_ARRAY,
        "h2_final": _NUM_ARRAY,
    },
    "required": ["beta", "h1", "h2", "state"],
    "additionalProperties": False,
}


class InstanceError(ValueError):
    """Invalid instance; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


def _path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


@dataclass(frozen=True, eq=False)
class Instance:
    spec: EngineSpec
    state: BlockSpectrum | DenseState
    final: BlockSpectrum | DenseState | None
    spec_final: EngineSpec | None

    def block(self, which: str = "state") -> BlockSpectrum:
        """Block spectrum of the initial or final state (dense states must be block-diagonal)."""
        s = self.state if which == "state" else self.final
        spec = self.spec if which == "state" else self.spec_final
        if isinstance(s, BlockSpectrum):
            return s
        return block_spectrum(s, weighted_spectrum(spec))


def _state(obj, spec: EngineSpec, field: str):
    n = spec.dim
    if obj["kind"] == "diagonal":
        p = np.asarray(obj["p"], dtype=float)
        if p.size != n:
            raise InstanceError(f"$.{field}.p", f"expected {n} entries (d1*d2), got {p.size}")
        if np.any(p < -1e-12):
            raise InstanceError(f"$.{field}.p", "entries must be non-negative")
        if abs(p.sum() - 1.0) > 1e-9:
            raise InstanceError(f"$.{field}.p", f"entries must sum to 1, got {p.sum():.12g}")
        return BlockSpectrum(p, weighted_spectrum(spec))
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    for name, m in (("re", re), ("im", im)):
        if m.ndim != 2 or m.shape != (n, n):
            raise InstanceError(f"$.{field}.{name}", f"expected a {n}x{n} matrix")
    try:
        return DenseState(re + 1j * im)
    except ValueError as exc:
        raise InstanceError(f"$.{field}", str(exc)) from None


def parse_instance(obj: Any) -> Instance:
    """Validate a decoded JSON document and build the instance."""
    v = jsonschema.Draft7Validator(INSTANCE_SCHEMA)
    errors = sorted(v.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise InstanceError(_path(e.absolute_path), e.message)
    b1, b2 = obj["beta"]
    try:
        spec = EngineSpec.from_lists(obj["h1"], obj["h2"], b1, b2)
    except ValueError as exc:
        raise InstanceError("$.h1", str(exc)) from None
    state = _state(obj["state"], spec, "state")
    final = spec_final = None
    if "final" in obj:
        try:
            spec_final = EngineSpec.from_lists(obj.get("h1_final", obj["h1"]), obj.get("h2_final", obj["h2"]), b1, b2)
        except ValueError as exc:
            raise InstanceError("$.h1_final", str(exc)) from None
        final = _state(obj["final"], spec_final, "final")
    elif "h1_final" in obj or "h2_final" in obj:
        raise InstanceError("$.final", "final Hamiltonians given without a final state")
    return Instance(spec, state, final, spec_final)


def load_instance(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return parse_instance(obj)


def _floats(a):
    return [float(x) for x in np.asarray(a, dtype=float).ravel()]


def state_obj(s) -> dict:
    if isinstance(s, DenseState):
        m = s.matrix
        return {"kind": "dense", "re": [_floats(r) for r in m.real], "im": [_floats(r) for r in m.imag]}
    p = s.p if isinstance(s, BlockSpectrum) else s
    return {"kind": "diagonal", "p": _floats(p)}


class Exact(dict):
    """A document serialised verbatim, without rounding its floats."""


def dump_instance(spec: EngineSpec, state, final=None, spec_final: EngineSpec | None = None) -> Exact:
    """InstanceFile document; floats keep full precision so failures replay exactly."""
    out = Exact({
        "beta": [float(spec.beta1), float(spec.beta2)],
        "h1": _floats(spec.h1.levels),
        "h2": _floats(spec.h2.levels),
        "state": state_obj(state),
    })
    if final is not None:
        out["final"] = state_obj(final)
        if spec_final is not None and not spec_final.same_as(spec, tol=0.0):
            out["h1_final"] = _floats(spec_final.h1.levels)
            out["h2_final"] = _floats(spec_final.h2.levels)
    return out


# ------------------------------------------------------------ formatting


def fmt_num(x):
    """Round to 12 significant digits; infinities and NaN become strings."""
    if x is None or isinstance(x, (bool, np.bool_)):
        return None if x is None else bool(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.{SIG_DIGITS}g}") + 0.0


def jsonable(obj):
    """Recursively convert report objects into JSON-ready values."""
    if isinstance(obj, Exact):
        return dict(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return fmt_num(obj)
    if hasattr(obj, "__dataclass_fields__"):
        return {k: jsonable(getattr(obj, k)) for k in obj.__dataclass_fields__}
    if obj is None or isinstance(obj, str):
        return obj
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2)


def csv_num(x) -> str:
    v = fmt_num(x)
    if v is None:
        return ""
    return v if isinstance(v, str) else f"{v:.{SIG_DIGITS}g}"


# ------------------------------------------------------------ report schemas

_NUM = {"type": ["number", "string"]}
_OPT_NUM = {"type": ["number", "string", "null"]}

TRANSFORM_REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "TransformReport",
    "type": "object",
    "properties": {
        "feasible": {"type": "boolean"},
        "catalytic": {"type": "boolean"},
        "feasible_cslto": {"type": "boolean"},
        "feasible_slto": {"type": "boolean"},
        "feasible_signed": {"type": ["boolean", "null"]},
        "violating_alpha": _OPT_NUM,
        "s_distance": _NUM,
        "minimizing_alpha": _NUM,
        "s_cost": _NUM,
        "maximizing_alpha": _NUM,
        "distillable": _NUM,
        "formation": _NUM,
        "margin": _NUM,
        "marginal": {"type": "boolean"},
        "work": {
            "type": "object",
            "properties": {k: _NUM for k in ("w1", "w2", "w_ext", "cost_w1", "cost_w2", "w_cost")},
            "required": ["w1", "w2", "w_ext", "split_rule", "w_cost"],
        },
        "cross_check": {"type": "object"},
    },
    "required": ["feasible", "catalytic", "feasible_cslto", "feasible_slto", "s_distance", "minimizing_alpha",
                 "s_cost", "work", "margin"],
}

ENGINE_REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "EngineReport",
    "type": "object",
    "properties": {
        "spontaneous": {"type": "boolean"},
        "catalytic": {"type": "boolean"},
        "budget": _NUM,
        "budget_alpha": _NUM,
        "cost_sup": _NUM,
        "split": {"type": "string"},
        "statements": {"type": ["object", "null"]},
        "alpha_works": {"type": ["object", "null"]},
        "local_to": {"type": ["object", "null"]},
        "refrigeration": {"type": ["object", "null"]},
        "heat": {"type": ["object", "null"]},
        "mutual_information": _OPT_NUM,
        "notes": {"type": "array", "items": {"type": "string"}},
    },
    "required": ["spontaneous", "catalytic", "budget", "split", "statements", "notes"],
}

BENCH_REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "BenchReport",
    "type": "object",
    "properties": {
        "suite": {"type": "string"},
        "ok": {"type": "boolean"},
        "trials": {"type": "integer"},
        "passed": {"type": "integer"},
        "failed": {"type": "integer"},
        "undecided": {"type": "integer"},
        "skipped": {"type": "integer"},
        "worst_margin": _NUM,
        "stats": {"type": "object"},
        "counterexamples": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"reason": {"type": "string"}, "instance": {"anyOf": [INSTANCE_SCHEMA, {"type": "null"}]}},
                "required": ["reason", "instance"],
            },
        },
    },
    "required": ["suite", "ok", "trials", "passed", "failed", "undecided", "counterexamples"],
}
