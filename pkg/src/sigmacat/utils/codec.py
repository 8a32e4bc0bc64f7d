"""Helpers shared by the JSON codecs of chains, maps and certificates."""

from __future__ import annotations

import hashlib
import json
from typing import Any


def form_to_json(form: Any) -> Any:
    """Nested tuples of ints become nested lists."""
    if isinstance(form, tuple):
        return [form_to_json(part) for part in form]
    return int(form)


def form_from_json(data: Any) -> Any:
    """Inverse of :func:`form_to_json`."""
    if isinstance(data, list):
        return tuple(form_from_json(part) for part in data)
    return int(data)


def canonical_json(data: Any) -> str:
    """Deterministic JSON text: sorted keys, no whitespace."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest(data: Any) -> str:
    """SHA-256 of the canonical JSON of ``data``."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()
