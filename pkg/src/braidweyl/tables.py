"""Registry of the shipped relation tables.

Each table id maps to a recipe over the standard braiding.  The bundled JSON
files under ``braidweyl/data`` are the recipes' outputs; :func:`load_table`
reads them and the test suite checks they still equal a fresh generation.
"""
from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources
from typing import Callable, Dict

from .hecke import BraidMatrix, change_basis_compact, generate_relations, limit_q1
from .pbw import RelationTable

__all__ = ["TABLE_IDS", "BUNDLED", "generate_table", "load_table", "write_bundled"]


def _standard() -> BraidMatrix:
    return BraidMatrix.standard()


def _gl2h() -> RelationTable:
    t = limit_q1(generate_relations(_standard(), "weyl-N"), name="gl2h")
    return t


def _u2h() -> RelationTable:
    t = change_basis_compact(_gl2h())
    return RelationTable(t.alphabet, t.rules, t.parameters, name="u2h",
                         weights=t.weights, aliases=t.aliases)


_RECIPES: Dict[str, Callable[[], RelationTable]] = {
    "RE": lambda: generate_relations(_standard(), "RE"),
    "mREA": lambda: generate_relations(_standard(), "mREA"),
    "double-LM": lambda: generate_relations(_standard(), "double-LM"),
    "double-KM": lambda: generate_relations(_standard(), "double-KM"),
    "weyl-M": lambda: generate_relations(_standard(), "weyl-M"),
    "weyl-N": lambda: generate_relations(_standard(), "weyl-N"),
    "weyl-M0": lambda: generate_relations(_standard(), "weyl-M", inhomogeneous=False),
    "weyl-N0": lambda: generate_relations(_standard(), "weyl-N", inhomogeneous=False),
    "gl2h": _gl2h,
    "u2h": _u2h,
}

TABLE_IDS = tuple(_RECIPES)
# the six relation families over the standard braiding, plus the q = 1 tables
BUNDLED = ("RE", "mREA", "double-LM", "double-KM", "weyl-M", "weyl-N", "gl2h", "u2h")


def generate_table(table_id: str) -> RelationTable:
    if table_id not in _RECIPES:
        raise KeyError(f"unknown table {table_id!r}; known: {', '.join(TABLE_IDS)}")
    t = _RECIPES[table_id]()
    if t.name != table_id:
        t = RelationTable(t.alphabet, t.rules, t.parameters, name=table_id,
                          weights=t.weights, aliases=t.aliases)
    return t


@lru_cache(maxsize=None)
def _load_cached(table_id: str) -> RelationTable:
    if table_id in BUNDLED:
        text = resources.files("braidweyl.data").joinpath(f"{table_id}.json").read_text()
        return RelationTable.loads(text)
    return generate_table(table_id)


def load_table(ref: str) -> RelationTable:
    """A shipped table by id, or a user table from a JSON file path."""
    if ref in _RECIPES:
        return _load_cached(ref)
    if os.path.exists(ref):
        with open(ref) as fh:
            return RelationTable.loads(fh.read())
    raise KeyError(f"unknown table {ref!r}; known: {', '.join(TABLE_IDS)} or a JSON path")


def write_bundled(directory: str) -> None:
    for tid in BUNDLED:
        with open(os.path.join(directory, f"{tid}.json"), "w") as fh:
            fh.write(generate_table(tid).dumps())


if __name__ == "__main__":
    write_bundled(os.path.join(os.path.dirname(__file__), "data"))
