from __future__ import annotations

import string
from typing import Any

from .base import (
    AlgebraError,
    BackendMismatchError,
    Form,
    GroupBackend,
    GroupElem,
    UnknownGeneratorError,
    Word,
    grp_mul,
    normal_form,
)
from .baumslag_solitar import BaumslagSolitar
from .direct_product import DirectProduct
from .free import FreeGroup
from .free_abelian import FreeAbelian
from .group_ring import (
    GroupRingElem,
    fox_derivative,
    ring_add,
    ring_mul,
    ring_scale,
    support,
)
from .scalars import GroundRing, GroundRingMismatchError

__all__ = [
    "AlgebraError",
    "BackendMismatchError",
    "BaumslagSolitar",
    "DirectProduct",
    "Form",
    "FreeAbelian",
    "FreeGroup",
    "GroundRing",
    "GroundRingMismatchError",
    "GroupBackend",
    "GroupElem",
    "GroupRingElem",
    "UnknownGeneratorError",
    "Word",
    "build_group",
    "fox_derivative",
    "get_backend_map",
    "grp_mul",
    "normal_form",
    "ring_add",
    "ring_mul",
    "ring_scale",
    "support",
]


def get_backend_map() -> dict[str, type[GroupBackend]]:
    """Map scenario backend names to backend classes."""
    return {
        "free_abelian": FreeAbelian,
        "free": FreeGroup,
        "baumslag_solitar": BaumslagSolitar,
        "product": DirectProduct,
    }


def _default_generators(rank: int) -> tuple[str, ...]:
    return tuple(string.ascii_lowercase[:rank])


def build_group(descriptor: dict[str, Any]) -> GroupBackend:
    """Instantiate a backend from a scenario or certificate descriptor."""
    family = descriptor.get("backend", descriptor.get("family"))
    backend_map = get_backend_map()
    if family not in backend_map:
        msg = f"Unknown group backend '{family}'. Known: {', '.join(backend_map)}"
        raise AlgebraError(msg)

    if family == "product":
        factors = descriptor.get("factors")
        if factors is None:
            factors = [descriptor.get("left"), descriptor.get("right")]
        if len(factors) != 2 or None in factors:  # noqa: PLR2004
            msg = "A product group needs exactly two factors"
            raise AlgebraError(msg)
        return DirectProduct(build_group(factors[0]), build_group(factors[1]))

    if family == "baumslag_solitar":
        generators = tuple(descriptor.get("generators", ("a", "t")))
        return BaumslagSolitar(m=int(descriptor.get("m", 2)), generators=generators)

    generators = descriptor.get("generators")
    rank = descriptor.get("rank")
    if generators is None:
        if rank is None or int(rank) < 1:
            msg = f"Backend '{family}' needs generators or a rank >= 1"
            raise AlgebraError(msg)
        generators = _default_generators(int(rank))
    generators = tuple(str(symbol) for symbol in generators)
    if rank is not None and int(rank) != len(generators):
        msg = f"Rank {rank} does not match generators {list(generators)}"
        raise AlgebraError(msg)
    if not generators:
        msg = f"Backend '{family}' needs at least one generator"
        raise AlgebraError(msg)
    return backend_map[family](generators=generators)
