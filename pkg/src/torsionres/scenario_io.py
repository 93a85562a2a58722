"""Scenario file loading and validation.

Scenario files are JSON documents:

    {
      "schema": 1,
      "m": 2,
      "mode": "exact",
      "V": {"value": ["1", "0", "0", "0"],
            "jacobian": [["0","0","0","0"], ["1","0","0","0"], ...]},
      "X": ["0","0","0","0"],
      "u": ["0","1","0","0"],
      "v": ["0","1","0","0"],
      "w": ["0","1","0","0"],
      "curvature": [{"indices": [1,2,1,2], "value": "1/3"}],   // optional
      "perturb": {"term": "l4", "delta": "1/7"}                // optional
    }

``jacobian[j][a]`` is the derivative of V_a along x_j (rows are
directions).  Exact mode takes rational literals "p/q"; float mode takes
plain numbers.  The optional ``perturb`` block is the negative-control
hook: it shifts one term's reference closed form before the gating
comparison.

Validation errors carry the path of the offending field and are raised
as ``ScenarioError`` (the CLI maps them to exit code 2).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .clifford import FrameVector
from .geometry import CurvatureData, Scenario, VectorFieldJet
from .scalars import field_for_mode


class ScenarioError(ValueError):
    """A scenario file failed to parse or validate."""


def _parse_scalar(value, mode: str, path: str):
    fld = field_for_mode(mode)
    if mode == "exact":
        if isinstance(value, bool) or not isinstance(value, (str, int)):
            raise ScenarioError(
                f"{path}: exact mode needs rational literals like \"3/4\" (got {value!r})"
            )
        try:
            return fld.of(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ScenarioError(f"{path}: bad rational literal {value!r} ({exc})")
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{path}: float mode needs numeric literals (got {value!r})")
    return fld.of(value)


def _parse_vector(obj, n: int, mode: str, path: str) -> FrameVector:
    if not isinstance(obj, list):
        raise ScenarioError(f"{path}: expected a list of {n} components")
    if len(obj) != n:
        raise ScenarioError(f"{path}: expected {n} components, got {len(obj)}")
    return FrameVector(n, tuple(_parse_scalar(c, mode, f"{path}[{i}]") for i, c in enumerate(obj)))


def parse_scenario(doc: Dict) -> Tuple[Scenario, Optional[Tuple[str, Fraction]]]:
    """Validate a parsed JSON document into a Scenario plus the optional
    negative-control perturbation."""
    if not isinstance(doc, dict):
        raise ScenarioError("scenario: top level must be an object")
    schema = doc.get("schema")
    if schema != 1:
        raise ScenarioError(f"schema: unsupported version {schema!r} (expected 1)")
    m = doc.get("m")
    if not isinstance(m, int) or m < 2:
        raise ScenarioError(f"m: must be an integer >= 2, got {m!r}")
    mode = doc.get("mode")
    if mode not in ("exact", "float"):
        raise ScenarioError(f"mode: must be \"exact\" or \"float\", got {mode!r}")
    n = 2 * m

    v_obj = doc.get("V")
    if not isinstance(v_obj, dict) or "value" not in v_obj or "jacobian" not in v_obj:
        raise ScenarioError("V: expected an object with \"value\" and \"jacobian\"")
    value = _parse_vector(v_obj["value"], n, mode, "V.value")
    jac_obj = v_obj["jacobian"]
    if not isinstance(jac_obj, list) or len(jac_obj) != n:
        raise ScenarioError(f"V.jacobian: expected {n} rows")
    jacobian = tuple(
        tuple(
            _parse_scalar(c, mode, f"V.jacobian[{j}][{a}]")
            for a, c in enumerate(_require_row(row, n, f"V.jacobian[{j}]"))
        )
        for j, row in enumerate(jac_obj)
    )
    if not bool(value.dot(value)):
        raise ScenarioError("V.value: vector field V is not zero -- |V|^2 must be positive")

    vectors = {
        name: _parse_vector(doc.get(name), n, mode, name) for name in ("X", "u", "v", "w")
    }

    curvature = None
    if "curvature" in doc and doc["curvature"] is not None:
        entries: Dict[Tuple[int, int, int, int], Fraction] = {}
        if not isinstance(doc["curvature"], list):
            raise ScenarioError("curvature: expected a list of entries")
        for i, ent in enumerate(doc["curvature"]):
            path = f"curvature[{i}]"
            if not isinstance(ent, dict) or "indices" not in ent or "value" not in ent:
                raise ScenarioError(f"{path}: expected {{indices, value}}")
            idx = ent["indices"]
            if not (isinstance(idx, list) and len(idx) == 4 and all(isinstance(k, int) for k in idx)):
                raise ScenarioError(f"{path}.indices: expected four integer indices")
            try:
                entries[tuple(idx)] = Fraction(ent["value"])
            except (ValueError, ZeroDivisionError) as exc:
                raise ScenarioError(f"{path}.value: bad rational ({exc})")
        try:
            curvature = CurvatureData.from_entries(n, entries)
        except ValueError as exc:
            raise ScenarioError(f"curvature: {exc}")

    perturb = None
    if "perturb" in doc and doc["perturb"] is not None:
        p = doc["perturb"]
        if not isinstance(p, dict) or "term" not in p or "delta" not in p:
            raise ScenarioError("perturb: expected {term, delta}")
        try:
            perturb = (str(p["term"]), Fraction(p["delta"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise ScenarioError(f"perturb.delta: bad rational ({exc})")

    try:
        scenario = Scenario(
            m=m,
            mode=mode,
            V=VectorFieldJet(value, jacobian),
            X=vectors["X"],
            u=vectors["u"],
            v=vectors["v"],
            w=vectors["w"],
            curvature=curvature,
            seed=doc.get("seed"),
        )
    except ValueError as exc:
        raise ScenarioError(str(exc))
    return scenario, perturb


def _require_row(row, n: int, path: str):
    if not isinstance(row, list) or len(row) != n:
        raise ScenarioError(f"{path}: expected {n} entries")
    return row


def load_scenario(path: str) -> Tuple[Scenario, Optional[Tuple[str, Fraction]]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise ScenarioError(f"{path}: file not found")
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON ({exc})")
    return parse_scenario(doc)
