"""Country name normalization driven by an alias table (``raw,canonical`` CSV)."""
from __future__ import annotations

import csv
import re
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping, Optional

from .model import UNKNOWN_COUNTRY, collapse_ws

# US addresses end in "<state> <zip> USA", e.g. "MA 02139 USA".
_US_ADDRESS = re.compile(r"^(?:[A-Z]{2}\s+)?(?:\d{5}(?:-\d{4})?\s+)?USA$")


def _alias_key(raw: str) -> str:
    return collapse_ws(raw).rstrip(".").strip().casefold()


def read_alias_csv(text: str, origin: str = "<aliases>") -> dict[str, str]:
    table: dict[str, str] = {}
    reader = csv.reader(text.splitlines())
    for lineno, row in enumerate(reader, 1):
        if not row or (lineno == 1 and [c.strip().lower() for c in row] == ["raw", "canonical"]):
            continue
        if len(row) != 2 or not row[0].strip() or not row[1].strip():
            raise ValueError(f"{origin}:{lineno}: expected 'raw,canonical', got {row!r}")
        table[_alias_key(row[0])] = row[1].strip()
    return table


@lru_cache(maxsize=1)
def default_aliases() -> Mapping[str, str]:
    text = resources.files("biblioforge").joinpath("data/country_aliases.csv").read_text("utf-8")
    return read_alias_csv(text, "country_aliases.csv")


def load_aliases(path: Optional[str | Path] = None) -> dict[str, str]:
    """Default alias table, extended (and overridden) by the CSV at ``path``."""
    table = dict(default_aliases())
    if path is not None:
        p = Path(path)
        table.update(read_alias_csv(p.read_text(encoding="utf-8"), str(p)))
    return table


def normalize_country(raw: str, aliases: Optional[Mapping[str, str]] = None) -> str:
    table = default_aliases() if aliases is None else aliases
    cleaned = collapse_ws(raw or "").rstrip(".").strip()
    if not cleaned:
        return UNKNOWN_COUNTRY
    hit = table.get(cleaned.casefold())
    if hit is not None:
        return hit
    if _US_ADDRESS.match(cleaned):
        return table.get("usa", "USA")
    return cleaned.title()
