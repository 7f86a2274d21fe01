"""Embedded reference table of the 81 entropy values and types.

Loaded from a packaged CSV resource (see data/reference_entropies.csv;
its SHA-256 is recorded in the README).  Values are kept both as the
10-decimal strings of the source and as floats.  Known quirks of the
source table, handled downstream:

  * the (1,1) entry 0.6924441915 is a finite-level truncation of ln 2,
  * the (7,2) entry is 0.1904155180 while an accompanying note claims 0,
  * the four cells (4,6), (4,7), (8,5), (9,5) print two different
    truncations of the same proven-equal quantity.
"""

from __future__ import annotations

import csv
from functools import lru_cache
from importlib import resources

#: Cell whose note and table value disagree in the source; comparisons
#: use the table value.
CONFLICT_CELL = (7, 2)


@lru_cache(maxsize=1)
def _load():
    text = (resources.files("goldshift") / "data" / "reference_entropies.csv").read_text()
    strings: dict[tuple[int, int], str] = {}
    types: dict[tuple[int, int], str] = {}
    for row in csv.DictReader(text.splitlines()):
        key = (int(row["alpha1"]), int(row["alpha2"]))
        strings[key] = row["entropy"]
        types[key] = row["type"]
    if len(strings) != 81:
        raise ValueError(f"reference table has {len(strings)} entries, expected 81")
    return strings, types


def reference_strings() -> dict[tuple[int, int], str]:
    return dict(_load()[0])


def reference_entropies() -> dict[tuple[int, int], float]:
    return {k: float(v) for k, v in _load()[0].items()}


def reference_types() -> dict[tuple[int, int], str]:
    return dict(_load()[1])
