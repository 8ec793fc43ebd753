"""Canonical element ordering and JSON conversion for carrier values."""

import json
from collections.abc import Iterable
from typing import Any

SCHEMA_VERSION = 1


def element_key(value: Any) -> tuple:
    """Total order on element names: ints, then strings, then tuples."""
    if isinstance(value, bool):
        return (0, int(value))
    if isinstance(value, int):
        return (0, value)
    if isinstance(value, str):
        return (1, value)
    if isinstance(value, tuple):
        return (2, len(value), tuple(element_key(v) for v in value))
    return (3, repr(value))


def sort_elements(values: Iterable[Any]) -> tuple:
    return tuple(sorted(set(values), key=element_key))


def to_jsonable(value: Any) -> Any:
    if isinstance(value, tuple | list):
        return [to_jsonable(v) for v in value]
    if isinstance(value, frozenset | set):
        return [to_jsonable(v) for v in sorted(value, key=element_key)]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    return value


def from_jsonable(value: Any) -> Any:
    """Inverse of ``to_jsonable`` for element data: lists become tuples."""
    if isinstance(value, list):
        return tuple(from_jsonable(v) for v in value)
    return value


def dumps(document: dict) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation)."""
    return json.dumps(
        to_jsonable(document), sort_keys=True, indent=2, ensure_ascii=False
    )
