"""JSON interchange for jets, maps and model objects.

Wire formats (all rationals are strings like ``"-3/2"`` or bare integers):

* ``Jet1``: ``{"order": N, "coeffs": ["p/q", ...]}`` with ``N + 1`` entries,
* ``Jet2``: ``{"order": N, "coeffs": {"i,j": "p/q", ...}}``, absent = zero,
* ``MapJet2``: ``{"order": N, "x": <Jet2>, "y": <Jet2>}``,
* resonance map: ``{"lambda": "p/q", "omega": <Jet1>}``,
* resonance vector field: ``{"f": <Jet1>, "g": <Jet1>}``,
* contact normal form: ``{"theta": <Jet1>}``,
* form jet: ``{"degree": d, "comps": [<Jet2>, ...]}`` (1, 3, 3 or 1
  components for degrees 0..3, in the component order of ``forms``).

Parsing is strict: unknown keys, floats and malformed fractions raise
``InputFormatError`` carrying a JSON-pointer-style path.
"""

from __future__ import annotations

from gmpy2 import mpq

from .jetalg import Jet1, Jet2, MapJet2

__all__ = [
    "InputFormatError",
    "contact_from_json",
    "contact_to_json",
    "formjet_from_json",
    "formjet_to_json",
    "jet1_from_json",
    "jet1_to_json",
    "jet2_from_json",
    "jet2_to_json",
    "map_from_json",
    "map_to_json",
    "rational_from_json",
    "rational_to_json",
    "resmap_from_json",
    "resmap_to_json",
    "resvf_from_json",
    "resvf_to_json",
]


class InputFormatError(ValueError):
    """Malformed input document; ``path`` points at the offending node."""

    def __init__(self, path: str, message: str):
        self.path = path or "/"
        super().__init__(f"{self.path}: {message}")


def rational_to_json(value) -> str:
    return str(mpq(value))


def rational_from_json(node, path: str) -> mpq:
    if isinstance(node, bool) or isinstance(node, float):
        raise InputFormatError(path, f"exact rational required, got {node!r}")
    if isinstance(node, int):
        return mpq(node)
    if isinstance(node, str):
        try:
            return mpq(node.strip())
        except (ValueError, ZeroDivisionError):
            raise InputFormatError(path, f"malformed rational {node!r}") from None
    raise InputFormatError(path, f"rational must be a string or int, got {type(node).__name__}")


def _require_object(node, path: str, keys: set) -> dict:
    if not isinstance(node, dict):
        raise InputFormatError(path, f"expected an object, got {type(node).__name__}")
    unknown = set(node) - keys
    if unknown:
        raise InputFormatError(path, f"unknown keys {sorted(unknown)}; expected {sorted(keys)}")
    missing = keys - set(node)
    if missing:
        raise InputFormatError(path, f"missing keys {sorted(missing)}")
    return node


def _order_from_json(node, path: str) -> int:
    if isinstance(node, bool) or not isinstance(node, int) or node < 0:
        raise InputFormatError(path, f"order must be a nonnegative int, got {node!r}")
    return node


# -- Jet1


def jet1_to_json(a: Jet1) -> dict:
    return {"order": a.order, "coeffs": [str(c) for c in a.coeffs]}


def jet1_from_json(node, path: str = "") -> Jet1:
    obj = _require_object(node, path, {"order", "coeffs"})
    order = _order_from_json(obj["order"], f"{path}/order")
    coeffs = obj["coeffs"]
    if not isinstance(coeffs, list):
        raise InputFormatError(f"{path}/coeffs", "expected a list")
    if len(coeffs) != order + 1:
        raise InputFormatError(
            f"{path}/coeffs", f"expected {order + 1} entries for order {order}, got {len(coeffs)}"
        )
    vals = [rational_from_json(c, f"{path}/coeffs/{k}") for k, c in enumerate(coeffs)]
    return Jet1(vals, order)


# -- Jet2


def jet2_to_json(a: Jet2) -> dict:
    coeffs = {
        f"{i},{j}": str(c)
        for (i, j), c in sorted(a.coeffs.items(), key=lambda kv: (kv[0][0] + kv[0][1], kv[0]))
    }
    return {"order": a.order, "coeffs": coeffs}


def jet2_from_json(node, path: str = "") -> Jet2:
    obj = _require_object(node, path, {"order", "coeffs"})
    order = _order_from_json(obj["order"], f"{path}/order")
    coeffs = obj["coeffs"]
    if not isinstance(coeffs, dict):
        raise InputFormatError(f"{path}/coeffs", "expected an object keyed by 'i,j'")
    out = {}
    for key, value in coeffs.items():
        kpath = f"{path}/coeffs/{key}"
        parts = key.split(",") if isinstance(key, str) else []
        if len(parts) != 2:
            raise InputFormatError(kpath, "key must look like 'i,j'")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputFormatError(kpath, "key must hold two integers") from None
        if i < 0 or j < 0:
            raise InputFormatError(kpath, "exponents must be nonnegative")
        if i + j > order:
            raise InputFormatError(kpath, f"monomial degree {i + j} exceeds order {order}")
        out[(i, j)] = rational_from_json(value, kpath)
    return Jet2(out, order)


# -- MapJet2


def map_to_json(m: MapJet2) -> dict:
    return {"order": m.order, "x": jet2_to_json(m.x), "y": jet2_to_json(m.y)}


def map_from_json(node, path: str = "") -> MapJet2:
    obj = _require_object(node, path, {"order", "x", "y"})
    order = _order_from_json(obj["order"], f"{path}/order")
    jx = jet2_from_json(obj["x"], f"{path}/x")
    jy = jet2_from_json(obj["y"], f"{path}/y")
    if jx.order != order or jy.order != order:
        raise InputFormatError(path, "component orders must match the map order")
    try:
        return MapJet2(jx, jy)
    except ValueError as exc:
        raise InputFormatError(path, str(exc)) from None


# -- model objects (late imports dodge a module cycle)


def resmap_to_json(f) -> dict:
    return {"lambda": str(f.multiplier), "omega": jet1_to_json(f.omega)}


def resmap_from_json(node, path: str = ""):
    from .cocycle import ResMap

    obj = _require_object(node, path, {"lambda", "omega"})
    lam = rational_from_json(obj["lambda"], f"{path}/lambda")
    omega = jet1_from_json(obj["omega"], f"{path}/omega")
    try:
        return ResMap(lam, omega)
    except ValueError as exc:
        raise InputFormatError(path, str(exc)) from None


def resvf_to_json(v) -> dict:
    return {"f": jet1_to_json(v.f), "g": jet1_to_json(v.g)}


def resvf_from_json(node, path: str = ""):
    from .contactnf import ResVF

    obj = _require_object(node, path, {"f", "g"})
    f = jet1_from_json(obj["f"], f"{path}/f")
    g = jet1_from_json(obj["g"], f"{path}/g")
    try:
        return ResVF(f, g)
    except ValueError as exc:
        raise InputFormatError(path, str(exc)) from None


def formjet_to_json(f) -> dict:
    return {"degree": f.degree, "comps": [jet2_to_json(c) for c in f.comps]}


def formjet_from_json(node, path: str = ""):
    from .forms import FormJet

    obj = _require_object(node, path, {"degree", "comps"})
    degree = obj["degree"]
    if isinstance(degree, bool) or not isinstance(degree, int) or not 0 <= degree <= 3:
        raise InputFormatError(f"{path}/degree", f"degree must be 0..3, got {degree!r}")
    comps = obj["comps"]
    if not isinstance(comps, list):
        raise InputFormatError(f"{path}/comps", "expected a list of bivariate jets")
    jets = tuple(jet2_from_json(c, f"{path}/comps/{k}") for k, c in enumerate(comps))
    try:
        return FormJet(degree, jets)
    except ValueError as exc:
        raise InputFormatError(path, str(exc)) from None


def contact_to_json(c) -> dict:
    return {"theta": jet1_to_json(c.theta)}


def contact_from_json(node, path: str = ""):
    from .contactnf import ContactNF

    obj = _require_object(node, path, {"theta"})
    theta = jet1_from_json(obj["theta"], f"{path}/theta")
    try:
        return ContactNF(theta)
    except ValueError as exc:
        raise InputFormatError(path, str(exc)) from None
