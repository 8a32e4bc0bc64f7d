from __future__ import annotations

from typing import Any

from sigmacat.complexes import Cell, ChainComplex, chain_from_json, chain_to_json
from sigmacat.utils.codec import form_from_json, form_to_json

from .maps import FinitaryMap
from .volley import Volley
from .windows import FinitaryError


def map_to_json(phi: FinitaryMap) -> dict[str, Any]:
    """Volley table, default choices and overrides of a finitary map."""
    if phi.selector is not None:
        msg = "Maps driven by a selector are not serializable"
        raise FinitaryError(msg)
    return {
        "degree": phi.degree,
        "volley": {
            symbol: [chain_to_json(chain) for chain in candidates]
            for symbol, candidates in sorted(phi.volley.table.items())
        },
        "defaults": {
            symbol: phi.volley.table[symbol].index(chain)
            for symbol, chain in sorted(phi.defaults.items())
        },
        "overrides": [
            [cell.symbol, form_to_json(cell.form), chain_to_json(chain)]
            for cell, chain in sorted(phi.overrides.items())
        ],
    }


def map_from_json(
    data: dict[str, Any], source: ChainComplex, target: ChainComplex
) -> FinitaryMap:
    """Inverse of :func:`map_to_json` given the two complexes."""
    group, ring = target.group, target.ring
    try:
        table = {
            symbol: tuple(chain_from_json(entry, group, ring) for entry in candidates)
            for symbol, candidates in data["volley"].items()
        }
        volley = Volley(source, target, int(data["degree"]), table)
        defaults = {
            symbol: table[symbol][int(index)]
            for symbol, index in data["defaults"].items()
        }
        overrides = {
            Cell(symbol, form_from_json(form)): chain_from_json(entry, group, ring)
            for symbol, form, entry in data["overrides"]
        }
    except (KeyError, IndexError, TypeError, ValueError) as err:
        msg = f"Malformed finitary map: {err}"
        raise FinitaryError(msg) from err
    return FinitaryMap(volley, defaults, overrides)
