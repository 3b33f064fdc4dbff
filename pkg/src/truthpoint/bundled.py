"""Access to the demo pools shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Sequence

from .syntax import SentencePool, load_pool

BUNDLED = ("core", "vb-sep", "mc-sep", "pk", "omega", "theta-failures", "theta12",
           "it-a", "it-b", "it-c", "it-mc", "it9")


def bundled_source(name: str) -> str:
    if name not in BUNDLED:
        raise FileNotFoundError(f"no bundled pool named {name!r}")
    return resources.files("truthpoint").joinpath("pools").joinpath(f"{name}.pool").read_text()


def pool_source(arg: str) -> str:
    """Read a pool given either a bundled name or a file path."""
    if arg in BUNDLED:
        return bundled_source(arg)
    return Path(arg).read_text()


def load(arg: str, extra_closures: Sequence[str] = ()) -> SentencePool:
    return load_pool(pool_source(arg), extra_closures)
