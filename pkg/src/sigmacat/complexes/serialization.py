from __future__ import annotations

from typing import Any

from sigmacat.algebra import GroundRing, GroupBackend, build_group
from sigmacat.utils.codec import form_from_json, form_to_json

from .chains import Cell, Chain, ComplexError
from .complex import ChainComplex, Provenance

SCHEMA_VERSION = 1


class SerializationError(ComplexError):
    """Raised when a serialized complex or chain cannot be read back."""


def chain_to_json(chain: Chain) -> dict[str, Any]:
    """Serialize a chain as sorted ``[symbol, form, coefficient]`` triples."""
    return {
        "dimension": chain.dimension,
        "terms": [
            [cell.symbol, form_to_json(cell.form), chain.ring.dump(c)]
            for cell, c in sorted(chain.terms.items())
        ],
    }


def chain_from_json(
    data: dict[str, Any], group: GroupBackend, ring: GroundRing
) -> Chain:
    """Inverse of :func:`chain_to_json`."""
    try:
        terms = {
            Cell(symbol, form_from_json(form)): ring.scalar(coefficient)
            for symbol, form, coefficient in data["terms"]
        }
        return Chain(group, ring, int(data["dimension"]), terms)
    except (KeyError, TypeError, ValueError) as err:
        msg = f"Malformed chain: {err}"
        raise SerializationError(msg) from err


def complex_to_json(complex_: ChainComplex) -> dict[str, Any]:
    """Versioned JSON document with bases, boundary tables and augmentation."""
    ring = complex_.ring
    return {
        "schema": SCHEMA_VERSION,
        "group": complex_.group.to_json(),
        "ring": ring.to_json(),
        "bases": [list(basis) for basis in complex_.bases],
        "boundaries": {
            symbol: chain_to_json(chain)
            for symbol, chain in sorted(complex_.boundaries.items())
        },
        "augmentation": {
            symbol: [ring.dump(v) for v in values]
            for symbol, values in sorted(complex_.augmentation.items())
        },
        "module_rank": complex_.module_rank,
        "top": complex_.top,
        "complete": complex_.complete,
        "provenance": {
            symbol: {
                "x": chain_to_json(entry.x),
                "c": chain_to_json(entry.c),
                "d": chain_to_json(entry.d) if entry.d is not None else None,
            }
            for symbol, entry in sorted(complex_.provenance.items())
        },
    }


def complex_from_json(data: dict[str, Any]) -> ChainComplex:
    """Read a complex back and re-validate it."""
    if data.get("schema") != SCHEMA_VERSION:
        msg = f"Unsupported complex schema {data.get('schema')!r}"
        raise SerializationError(msg)
    try:
        group = build_group(data["group"])
        ring = GroundRing.from_json(data["ring"])

        def chain(entry: dict[str, Any] | None) -> Chain | None:
            return None if entry is None else chain_from_json(entry, group, ring)

        return ChainComplex(
            group=group,
            ring=ring,
            bases=tuple(tuple(basis) for basis in data["bases"]),
            boundaries={
                symbol: chain_from_json(entry, group, ring)
                for symbol, entry in data["boundaries"].items()
            },
            augmentation={
                symbol: tuple(ring.scalar(v) for v in values)
                for symbol, values in data["augmentation"].items()
            },
            module_rank=int(data["module_rank"]),
            top=int(data["top"]),
            complete=bool(data["complete"]),
            provenance={
                symbol: Provenance(
                    x=chain(entry["x"]), c=chain(entry["c"]), d=chain(entry["d"])
                )
                for symbol, entry in data.get("provenance", {}).items()
            },
        ).validate()
    except KeyError as err:
        msg = f"Missing field {err} in serialized complex"
        raise SerializationError(msg) from err
