import importlib

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "hvgap", deadline=None, derandomize=True, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("hvgap")


def _backends():
    names = ["hvgap._scalar_py"]
    try:
        importlib.import_module("hvgap._scalar_cy")
        names.append("hvgap._scalar_cy")
    except ImportError:
        pass
    return names


@pytest.fixture(params=_backends(), ids=lambda n: n.rsplit("_", 1)[-1])
def kernel(request):
    """Each available scalar kernel module (pure Python, and compiled if built)."""
    return importlib.import_module(request.param)
