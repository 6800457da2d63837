from __future__ import annotations

import functools
import logging
import os
from importlib import resources
from pathlib import Path

from .crystal import CrystalCatalog, UniaxialCrystal, read_crystal_data

logger = logging.getLogger(__name__)

DATA_DIR_ENV = "GHZ_ERASER_DATA_DIR"
DATA_FILE = "crystals.dat"


def crystal_data_path() -> Path:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override) / DATA_FILE
    return Path(str(resources.files("ghz_eraser.optics") / "data" / DATA_FILE))


@functools.lru_cache(maxsize=8)
def _load_catalog(path: str) -> CrystalCatalog:
    logger.debug("reading crystal data from %s", path)
    return read_crystal_data(path)


def load_catalog(path: str | Path | None = None) -> CrystalCatalog:
    return _load_catalog(str(path or crystal_data_path()))


def load_crystal(name: str, path: str | Path | None = None) -> UniaxialCrystal:
    return load_catalog(path).get(name)


def available_crystals(path: str | Path | None = None) -> list[str]:
    return load_catalog(path).names()


__all__ = [
    "DATA_DIR_ENV",
    "DATA_FILE",
    "available_crystals",
    "crystal_data_path",
    "load_catalog",
    "load_crystal",
]
