"""Bundled sample programs for demos and tests."""

from importlib import resources
from pathlib import Path

SAMPLE_NAMES = ("point", "accumulator", "lookup")


def sample_source(name: str) -> str:
    """Source text of a bundled sample program."""
    if name not in SAMPLE_NAMES:
        raise ValueError(f"unknown sample {name!r}; choose from {SAMPLE_NAMES}")
    return resources.files(__package__).joinpath(f"{name}.mj").read_text(encoding="utf-8")


def sample_path(name: str) -> Path:
    """Filesystem path of a bundled sample program."""
    if name not in SAMPLE_NAMES:
        raise ValueError(f"unknown sample {name!r}; choose from {SAMPLE_NAMES}")
    return Path(str(resources.files(__package__).joinpath(f"{name}.mj")))
