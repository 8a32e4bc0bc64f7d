import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import yaml
from dotenv import load_dotenv

from .algebra import (
    AlgebraError,
    BaumslagSolitar,
    DirectProduct,
    FreeAbelian,
    GroundRing,
    GroupBackend,
    Word,
    build_group,
)
from .complexes import (
    Cell,
    Chain,
    ChainComplex,
    ComplexError,
    Presentation,
    QuotientModule,
    fox_resolution,
    make_admissible,
    resolution_from_tables,
    tensor_complex,
)
from .geometry import (
    CONTROL_PRESETS,
    ControlledModel,
    GeometryError,
    ModelSpace,
    ProductModel,
    build_control,
    build_model,
)
from .finitary import neighbourhood
from .sigma import Budgets
from .utils.codec import digest

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DEFAULT_STORE_DIR = Path("sigma-certificates")
SCENARIO_SCHEMA = 1
YAML_SUFFIXES = (".yaml", ".yml")


class ConfigError(Exception):
    """Base exception for scenario and environment errors."""


class ConfigNotFoundError(ConfigError, FileNotFoundError):
    """Raised when a scenario file cannot be found."""

    def __init__(self, path: Path) -> None:
        super().__init__(f"Scenario file not found at {path}")


def load_environment() -> None:
    """Load ``.env`` from the working directory, then the user config file."""
    load_dotenv(Path.cwd() / ".env")
    load_dotenv(Path.home() / ".config" / "sigmacat" / "config.env")


def default_store_dir() -> Path:
    """Certificate store directory from ``SIGMA_CERT_DIR``."""
    return Path(os.environ.get("SIGMA_CERT_DIR", str(DEFAULT_STORE_DIR))).expanduser()


@dataclass(frozen=True, eq=False)
class Scenario:
    """A parsed scenario: group, module, model, resolution, control and budgets.

    ``raw`` is the mapping the scenario was built from, with factor
    scenarios inlined; ``digest`` hashes it.
    """

    name: str
    raw: dict[str, Any]
    group: GroupBackend
    ring: GroundRing
    module_rank: int
    model: ModelSpace
    complex: ChainComplex
    control: ControlledModel
    budgets: Budgets
    seed: int
    factors: tuple["Scenario", "Scenario"] | None = None
    module: QuotientModule | None = None

    @property
    def digest(self) -> str:
        """SHA-256 of the canonical JSON of the raw scenario."""
        return digest(self.raw)


def default_relators(group: GroupBackend) -> list[Word]:
    """Relators of the standard presentation of a built-in group."""
    if isinstance(group, FreeAbelian):
        rank = group.rank()
        return [
            [(i, 1), (j, 1), (i, -1), (j, -1)]
            for i in range(rank)
            for j in range(i + 1, rank)
        ]
    if isinstance(group, BaumslagSolitar):
        return [[(1, 1), (0, 1), (1, -1), (0, -group.m)]]
    if isinstance(group, DirectProduct):
        shift = group.left.rank()
        relators = list(default_relators(group.left))
        relators.extend(
            [(index + shift, exponent) for index, exponent in word]
            for word in default_relators(group.right)
        )
        relators.extend(
            [(i, 1), (shift + j, 1), (i, -1), (shift + j, -1)]
            for i in range(shift)
            for j in range(group.right.rank())
        )
        return relators
    return []


def _tables(
    layout: dict[str, Any],
    group: GroupBackend,
    ring: GroundRing,
    module: QuotientModule,
) -> ChainComplex:
    """A resolution from ``bases``, ``boundaries`` and ``augmentation`` tables.

    Boundary entries are ``[symbol, word, coefficient]`` triples. For a
    quotient module, eps d = 0 is checked in A on translates within the
    table's ``window`` (default 2) of each boundary.
    """
    bases = [list(basis) for basis in layout["bases"]]
    boundaries = {}
    for k, basis in enumerate(bases[1:], start=1):
        for symbol in basis:
            terms: dict[Cell, Any] = {}
            for face, word, coefficient in layout["boundaries"].get(symbol, []):
                cell = Cell(face, group.evaluate(group.parse(str(word))))
                terms[cell] = terms.get(cell, ring.domain.zero) + ring.scalar(
                    coefficient
                )
            boundaries[symbol] = Chain(group, ring, k - 1, terms)
    complex_ = resolution_from_tables(
        group,
        ring,
        bases,
        boundaries,
        layout["augmentation"],
        module_rank=module.rank,
        top=int(layout.get("top", len(bases) - 1)),
        complete=bool(layout.get("complete", False)),
    )
    if not module.trivial:
        window = int(layout.get("window", 2))
        for symbol in complex_.basis(1):
            image = module.image(
                complex_, complex_.boundary(complex_.basis_cell(symbol))
            )
            centres = [group.identity, *(form for _, form in image)]
            if not module.spans(image, neighbourhood(group, centres, window)):
                msg = f"The boundary of '{symbol}' does not augment to zero in A"
                raise ConfigError(msg)
    return complex_


def _resolution(
    data: dict[str, Any],
    group: GroupBackend,
    ring: GroundRing,
    module: QuotientModule,
    factors: tuple[Scenario, Scenario] | None,
) -> ChainComplex:
    layout = data.get("resolution", "tensor" if factors else "fox")
    if layout == "tensor":
        if factors is None:
            msg = "A tensor resolution needs 'factors'"
            raise ConfigError(msg)
        return tensor_complex(factors[0].complex, factors[1].complex)
    if layout == "fox" or (isinstance(layout, dict) and "fox" in layout):
        texts = layout["fox"] if isinstance(layout, dict) else None
        relators = (
            default_relators(group)
            if texts is None
            else [group.parse(str(text)) for text in texts]
        )
        presentation = Presentation(
            group,
            ring,
            tuple(relators),
            module_rank=module.rank,
            trivial_module=module.trivial,
        )
        return make_admissible(fox_resolution(presentation))
    if isinstance(layout, dict) and "tables" in layout:
        return _tables(layout["tables"], group, ring, module)
    msg = f"Unknown resolution {layout!r}; use fox, tensor or tables"
    raise ConfigError(msg)


def _budgets(data: dict[str, Any]) -> Budgets:
    budgets = Budgets.from_json(data.get("budgets") or {})
    for name, value in budgets.to_json().items():
        if name == "levels":
            continue
        if not isinstance(value, int) or value <= 0:
            msg = f"Budget '{name}' must be a positive integer, got {value!r}"
            raise ConfigError(msg)
    return budgets


def _control(
    data: dict[str, Any], model: ModelSpace, complex_: ChainComplex
) -> ControlledModel:
    layout = data.get("control", "base")
    table = None
    if isinstance(layout, dict):
        table = {
            symbol: [model.point_from_json(p) for p in points]
            for symbol, points in layout.get("table", {}).items()
        }
        layout = layout.get("preset", "base")
    if layout not in CONTROL_PRESETS:
        msg = f"Unknown control preset '{layout}'. Known: {', '.join(CONTROL_PRESETS)}"
        raise ConfigError(msg)
    base = data.get("base_point")
    return build_control(
        model,
        complex_,
        preset=layout,
        base=None if base is None else model.point_from_json(base),
        table=table,
    )


def parse_scenario(
    data: dict[str, Any], name: str = "scenario", root: Path | None = None
) -> Scenario:
    """Validate a scenario mapping; factor paths are resolved against ``root``."""
    if not isinstance(data, dict):
        msg = f"Scenario '{name}' must be a mapping"
        raise ConfigError(msg)
    if data.get("schema", SCENARIO_SCHEMA) != SCENARIO_SCHEMA:
        msg = f"Unsupported scenario schema {data.get('schema')!r}"
        raise ConfigError(msg)
    raw = dict(data)
    try:
        factors = None
        if "factors" in data:
            entries = data["factors"]
            if not isinstance(entries, list) or len(entries) != 2:  # noqa: PLR2004
                msg = "'factors' must list exactly two scenarios"
                raise ConfigError(msg)
            parsed = tuple(_factor(entry, root) for entry in entries)
            factors = (parsed[0], parsed[1])
            raw["factors"] = [factor.raw for factor in factors]
        ring = GroundRing.from_json(data.get("ring", "rationals"))
        if factors is not None:
            group = DirectProduct(factors[0].group, factors[1].group)
            model = ProductModel(group, factors[0].model, factors[1].model)
        else:
            group = build_group(data["group"])
            model = build_model(data["model"], group)
        module = QuotientModule.from_json(data.get("module") or {}, group, ring)
        complex_ = _resolution(data, group, ring, module, factors)
        control = _control(data, model, complex_)
    except KeyError as e:
        msg = f"Scenario '{name}' is missing {e}"
        raise ConfigError(msg) from e
    except (AlgebraError, ComplexError, GeometryError, TypeError, ValueError) as e:
        msg = f"Invalid scenario '{name}': {e}"
        raise ConfigError(msg) from e
    return Scenario(
        name=str(data.get("name", name)),
        raw=raw,
        group=group,
        ring=ring,
        module_rank=module.rank,
        model=model,
        complex=complex_,
        control=control,
        budgets=_budgets(data),
        seed=int(data.get("seed", 0)),
        factors=factors,
        module=module,
    )


def _factor(entry: Any, root: Path | None) -> Scenario:
    if isinstance(entry, str):
        path = Path(entry)
        if root is not None and not path.is_absolute():
            path = root / path
        return load_scenario(path)
    return parse_scenario(entry, name="factor", root=root)


def load_scenario(path: Path) -> Scenario:
    """Load and validate a scenario file: TOML, or YAML for ``.yaml``/``.yml``."""
    if not path.exists():
        raise ConfigNotFoundError(path)

    try:
        if path.suffix in YAML_SUFFIXES:
            with path.open("r") as f:
                data = yaml.safe_load(f)
        else:
            with path.open("rb") as f:
                data = tomllib.load(f)
    except (OSError, yaml.YAMLError, tomllib.TOMLDecodeError) as e:
        msg = f"Error loading or parsing scenario file at {path}: {e}"
        raise ConfigError(msg) from e
    return parse_scenario(data, name=path.stem, root=path.parent)
