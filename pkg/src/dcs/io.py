"""JSON mesh / structure files and deterministic report output.

Mesh file::

    {"vertex_count": 4, "faces": [[0, 1, 2], ...]}

Structure file::

    {"geometry": "hyperbolic", "family": "b2",      # or {"0-1": "c1", ...}
     "f": [...], "alpha": [...],                    # alpha optional
     "eta": {"0-1": 2.0, ...},                      # min-max edge keys
     "C": {"0,1": 0.3, ...}}                        # ordered pairs, optional

``(u, epsilon, zeta)`` files use ``"u"``, ``"epsilon"`` and ``"zeta"`` in
place of ``f``, ``alpha`` and ``eta``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import DCSError
from .gauge import ZGZLYGData
from .geometry import Geometry
from .structures import ConformalData, Family, PartialMetric, complete_C
from .surface import TriangulatedSurface, build_surface, edge_key


class SchemaError(DCSError, ValueError):
    """A file that is not valid JSON or does not follow the expected layout."""


def _read_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: top level must be a JSON object")
    return obj


def _edge(key: str, ordered: bool) -> tuple[int, int]:
    for sep in ("-", ","):
        if sep in key:
            a, b = key.split(sep)
            break
    else:
        raise SchemaError(f"bad edge key {key!r}")
    try:
        i, j = int(a), int(b)
    except ValueError:
        raise SchemaError(f"bad edge key {key!r}") from None
    return (i, j) if ordered else edge_key(i, j)


def edge_str(e) -> str:
    return f"{e[0]}-{e[1]}"


def oriented_str(e) -> str:
    return f"{e[0]},{e[1]}"


def mesh_from_json(obj: dict) -> TriangulatedSurface:
    try:
        faces = obj["faces"]
        n = obj.get("vertex_count")
    except (KeyError, AttributeError) as exc:
        raise SchemaError(f"mesh needs 'faces': {exc}") from exc
    if not isinstance(faces, list) or not all(isinstance(fc, list) and len(fc) == 3 for fc in faces):
        raise SchemaError("'faces' must be a list of vertex triples")
    return build_surface(faces, n)


def load_mesh(path) -> TriangulatedSurface:
    return mesh_from_json(_read_json(path))


def structure_from_json(obj: dict, surface: TriangulatedSurface | None = None) -> ConformalData:
    try:
        geometry = Geometry.parse(obj["geometry"])
        fam = obj["family"]
        if isinstance(fam, dict):
            family = {_edge(k, False): Family.parse(v) for k, v in fam.items()}
        else:
            family = Family.parse(fam)
        f = np.asarray(obj["f"], dtype=float)
        alpha = None if obj.get("alpha") is None else np.asarray(obj["alpha"], dtype=float)
        eta = {}
        for k, v in obj["eta"].items():
            e = _edge(k, False)
            if e in eta and eta[e] != float(v):
                raise SchemaError(f"eta given twice for edge {e} with different values")
            eta[e] = float(v)
        C = None
        if obj.get("C") is not None:
            C = {_edge(k, True): float(v) for k, v in obj["C"].items()}
            if surface is not None:
                C = complete_C(surface, C)
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise SchemaError(f"bad structure file: {exc!r}") from exc
    return ConformalData(geometry=geometry, f=f, eta=eta, family=family, alpha=alpha, C=C)


def load_structure(path, surface: TriangulatedSurface | None = None) -> ConformalData:
    return structure_from_json(_read_json(path), surface)


def structure_to_json(data: ConformalData) -> dict:
    out = {"geometry": data.geometry.value}
    if isinstance(data.family, Family):
        out["family"] = data.family.value
    else:
        out["family"] = {edge_str(e): t.value for e, t in sorted(data.family.items())}
    out["f"] = [float(x) for x in data.f]
    if data.alpha is not None:
        out["alpha"] = [float(x) for x in data.alpha]
    out["eta"] = {edge_str(e): v for e, v in sorted(data.eta.items())}
    if data.C is not None:
        out["C"] = {oriented_str(e): v for e, v in sorted(data.C.items())}
    return out


def zgzlyg_to_json(z: ZGZLYGData) -> dict:
    return {
        "geometry": z.geometry.value,
        "u": [float(x) for x in z.u],
        "epsilon": [int(x) for x in z.epsilon],
        "zeta": {edge_str(e): v for e, v in sorted(z.zeta.items())},
    }


def zgzlyg_from_json(obj: dict) -> ZGZLYGData:
    try:
        return ZGZLYGData(
            geometry=obj["geometry"],
            u=obj["u"],
            epsilon=obj["epsilon"],
            zeta={_edge(k, False): v for k, v in obj["zeta"].items()},
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad (u, epsilon, zeta) file: {exc!r}") from exc


def metric_to_json(metric: PartialMetric) -> dict:
    return {
        "geometry": metric.geometry.value,
        "l": {edge_str(e): v for e, v in sorted(metric.l.items())},
        "d": {oriented_str(e): v for e, v in sorted(metric.d.items())},
    }


def load_target(path, n: int) -> np.ndarray:
    obj = _read_json(path)
    try:
        K = np.asarray(obj["K"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"target file needs a 'K' list: {exc!r}") from exc
    if K.shape != (n,):
        raise SchemaError(f"target has {K.size} values for {n} vertices")
    return K


# ---------------------------------------------------------------------------
# byte-stable JSON: keys in insertion order, floats with 17 significant digits

def _encode(obj, indent, level) -> str:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return format(x, ".17g") if math.isfinite(x) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{" + pad + ("," + pad).join(items) + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [_encode(v, indent, level + 1) for v in obj]
        return "[" + pad + ("," + pad).join(items) + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _encode(obj, indent, 0) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
