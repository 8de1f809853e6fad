"""Module descriptors from JSON."""

from __future__ import annotations

from .base import Module, ModuleError
from .tensor import tensor_from_json
from .verma import TensorProduct, Twisted, Verma


def module_from_json(data: dict) -> Module:
    if not isinstance(data, dict) or "module" not in data:
        raise ModuleError("module descriptor must be an object with a 'module' field")
    kind = data["module"]
    try:
        if kind == "verma":
            return Verma(data["c"], data["h"], data["l"], int(data.get("cutoff", 6)))
        if kind == "tensor":
            return TensorProduct(module_from_json(data["left"]), module_from_json(data["right"]))
        if kind == "twisted":
            return Twisted(module_from_json(data["base"]), data.get("f", {}))
        return tensor_from_json(data)
    except KeyError as exc:
        raise ModuleError(f"descriptor {kind!r} is missing field {exc}") from None
