from __future__ import annotations

from typing import Any

from sigmacat.algebra import DirectProduct, Form, GroupBackend

from .base import (
    Direction,
    GeometryError,
    ModelMismatchError,
    ModelSpace,
    Point,
    ScaledValuation,
    orbit_elements,
    sample_points,
)
from .control import (
    CONTROL_PRESETS,
    ControlledModel,
    build_control,
    control_from_json,
    control_to_json,
    dist_to_base,
    hausdorff,
    valuation,
    with_base,
)
from .euclidean import EuclideanModel, inner, parse_vector, rational_gcd
from .product import Join, ProductModel, canonical_join, farey_weights
from .tree import OMEGA, TreeEnd, TreeModel, digits_to_rational, m_adic_order

__all__ = [
    "CONTROL_PRESETS",
    "OMEGA",
    "ControlledModel",
    "Direction",
    "EuclideanModel",
    "GeometryError",
    "Join",
    "ModelMismatchError",
    "ModelSpace",
    "Point",
    "ProductModel",
    "ScaledValuation",
    "TreeEnd",
    "TreeModel",
    "act_boundary",
    "act_point",
    "build_control",
    "build_model",
    "busemann_delta",
    "canonical_join",
    "control_from_json",
    "control_to_json",
    "digits_to_rational",
    "dist_to_base",
    "farey_weights",
    "get_model_map",
    "hausdorff",
    "inner",
    "load_control",
    "m_adic_order",
    "orbit_closure_sample",
    "orbit_elements",
    "parse_vector",
    "rational_gcd",
    "sample_directions",
    "sample_points",
    "valuation",
    "with_base",
]


def get_model_map() -> dict[str, type[ModelSpace]]:
    """Map scenario model kinds to model classes."""
    return {
        "euclidean": EuclideanModel,
        "tree": TreeModel,
        "product": ProductModel,
    }


def build_model(descriptor: dict[str, Any], group: GroupBackend) -> ModelSpace:
    """Instantiate a model space for a group from a scenario descriptor."""
    kind = descriptor.get("kind")
    if kind not in get_model_map():
        msg = f"Unknown model kind '{kind}'. Known: {', '.join(get_model_map())}"
        raise GeometryError(msg)
    if kind == "tree":
        return TreeModel(group)
    if kind == "product":
        if not isinstance(group, DirectProduct):
            msg = "A product model needs a product group"
            raise GeometryError(msg)
        return ProductModel(
            group,
            build_model(descriptor["left"], group.left),
            build_model(descriptor["right"], group.right),
        )
    translations = descriptor.get("translations")
    if isinstance(translations, dict):
        missing = [s for s in group.generators if s not in translations]
        if missing:
            msg = f"Missing translation vectors for generators {missing}"
            raise GeometryError(msg)
        vectors = tuple(tuple(translations[s]) for s in group.generators)
    elif isinstance(translations, list):
        vectors = tuple(tuple(v) for v in translations)
    else:
        msg = "A Euclidean model needs 'translations' per generator"
        raise GeometryError(msg)
    origin = descriptor.get("origin")
    return EuclideanModel(group, vectors, tuple(origin) if origin else None)


def busemann_delta(model: ModelSpace, e: Direction, p: Point, q: Point) -> Any:
    """Exact difference of Busemann values toward e."""
    return model.busemann_delta(e, p, q)


def act_point(model: ModelSpace, g: Form, p: Point) -> Point:
    """Isometric action on points."""
    return model.act_point(g, p)


def act_boundary(model: ModelSpace, g: Form, e: Direction) -> Direction:
    """Induced action on boundary directions."""
    model.check_direction(e)
    return model.act_boundary(g, e)


def orbit_closure_sample(
    model: ModelSpace, e: Direction, depth: int, generators: list[Form] | None = None
) -> list[Direction]:
    """Finite sample of the closure of the orbit of e."""
    return model.orbit_closure_sample(e, depth, generators)


def sample_directions(model: ModelSpace, count: int, seed: int = 0) -> list[Direction]:
    """Deterministic direction sample for scans."""
    return model.sample_directions(count, seed)


def load_control(data: dict[str, Any]) -> ControlledModel:
    """Read a serialized controlled model."""
    return control_from_json(data, build_model)
