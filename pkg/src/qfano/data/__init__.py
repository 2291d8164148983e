"""Shipped data: expected invariant tables, thresholds and the case corpus."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path

import yaml

TABLES_VERSION = 1


@lru_cache(maxsize=None)
def load_tables() -> dict:
    text = resources.files(__name__).joinpath("tables.yaml").read_text()
    data = yaml.safe_load(text)
    if data.get("version") != TABLES_VERSION:
        raise ValueError(f"tables.yaml version {data.get('version')} != {TABLES_VERSION}")
    return data


def corpus_root() -> Path:
    return Path(str(resources.files(__name__).joinpath("cases")))
