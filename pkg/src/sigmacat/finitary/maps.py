from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from sigmacat.algebra import Form
from sigmacat.complexes import Cell, Chain, ChainComplex, chain_sum

from .volley import Volley, compose_volleys, identity_volley, singleton_volley
from .windows import FinitaryError, Window

if TYPE_CHECKING:
    from sigmacat.geometry import ControlledModel, Point


@dataclass(frozen=True, eq=False)
class NearestSelector:
    """Choose, at every cell, the candidate whose control is closest to ``point``.

    Candidates are compared by D_point of their image; ties keep volley order.
    """

    target_control: ControlledModel
    point: Point

    def choose(self, candidates: tuple[Chain, ...]) -> Chain:
        """The chosen candidate."""
        best = candidates[0]
        best_distance = self.target_control.dist_to_base(best, self.point)
        for chain in candidates[1:]:
            distance = self.target_control.dist_to_base(chain, self.point)
            if distance < best_distance:
                best, best_distance = chain, distance
        return best


@dataclass(frozen=True, eq=False)
class FinitaryMap:
    """A selection from a volley: equivariant defaults plus finite overrides.

    ``defaults[x]`` is the value on ``x`` and gives ``g defaults[x]`` on
    ``g x``; ``overrides`` replace the value on individual cells. A selector,
    when present, makes the choice at every cell that is not overridden.
    """

    volley: Volley
    defaults: Mapping[str, Chain]
    overrides: Mapping[Cell, Chain] = field(default_factory=dict)
    selector: NearestSelector | None = None

    def __post_init__(self) -> None:
        for symbol, chain in self.defaults.items():
            if chain not in self.volley.table[symbol]:
                msg = f"Default value at '{symbol}' is not in the volley"
                raise FinitaryError(msg)
        for cell, chain in self.overrides.items():
            if not self.volley.contains(cell, chain):
                msg = f"Override at {cell} is not in the volley"
                raise FinitaryError(msg)

    @property
    def source(self) -> ChainComplex:
        """Domain complex."""
        return self.volley.source

    @property
    def target(self) -> ChainComplex:
        """Codomain complex."""
        return self.volley.target

    @property
    def degree(self) -> int:
        """Degree of the map."""
        return self.volley.degree

    @property
    def is_equivariant(self) -> bool:
        """Whether the map commutes with the group action everywhere."""
        return not self.overrides and self.selector is None

    def image(self, cell: Cell) -> Chain:
        """Value on a single cell."""
        cell = Cell(*cell)
        override = self.overrides.get(cell)
        if override is not None:
            return override
        if self.selector is not None:
            return self.selector.choose(self.volley.images(cell))
        return self.defaults[cell.symbol].translate(cell.form)

    def __call__(self, chain: Chain) -> Chain:
        """Additive extension to chains."""
        dimension = chain.dimension + self.degree
        return chain_sum(
            self.target.group,
            self.target.ring,
            dimension,
            (self.image(cell).scale(c) for cell, c in chain.terms.items()),
        )

    def equivariant_part(self, chain: Chain) -> Chain:
        """Additive extension of the defaults alone, ignoring overrides."""
        return chain_sum(
            self.target.group,
            self.target.ring,
            chain.dimension + self.degree,
            (
                self.defaults[cell.symbol].translate(cell.form).scale(c)
                for cell, c in chain.terms.items()
            ),
        )

    def on_basis(self, symbol: str) -> Chain:
        """Value on the basis cell ``x`` itself."""
        return self.image(Cell(symbol, self.source.group.identity))

    def chain_map_defects(self, cells: Iterable[Cell]) -> list[Cell]:
        """Cells where d phi = phi d (or the augmentation identity) fails."""
        if self.degree != 0:
            msg = "Only degree-0 maps can be chain maps"
            raise FinitaryError(msg)
        source, target = self.source, self.target
        defects = []
        for cell in cells:
            k = source.dimension_of(cell.symbol)
            value = self.image(cell)
            if k == 0:
                if target.augment(value) != source.augment(
                    Chain.cell(source.group, source.ring, 0, cell)
                ):
                    defects.append(cell)
            elif target.boundary(value) != self(source.boundary_of_cell(cell)):
                defects.append(cell)
        return defects

    def is_chain_map(self, window: Window) -> bool:
        """Chain-map and augmentation identities on every window cell."""
        return not self.chain_map_defects(window.all_cells(self.source))


def equivariant_map(
    source: ChainComplex, target: ChainComplex, degree: int, images: Mapping[str, Chain]
) -> FinitaryMap:
    """The G-map with the given values on basis symbols."""
    volley = singleton_volley(source, target, degree, images)
    return FinitaryMap(
        volley, {symbol: values[0] for symbol, values in volley.table.items()}
    )


def identity_map(complex_: ChainComplex) -> FinitaryMap:
    """The identity chain map."""
    volley = identity_volley(complex_)
    return FinitaryMap(
        volley, {symbol: values[0] for symbol, values in volley.table.items()}
    )


def multiplication_map(complex_: ChainComplex, g: Form) -> FinitaryMap:
    """The G-map x -> g x on every basis symbol.

    It is a chain map when ``g`` is central, e.g. for abelian groups.
    """
    return equivariant_map(
        complex_,
        complex_,
        0,
        {
            symbol: complex_.basis_cell(symbol, g)
            for basis in complex_.bases
            for symbol in basis
        },
    )


def zero_map(source: ChainComplex, target: ChainComplex, degree: int) -> FinitaryMap:
    """The zero map of a given degree."""
    return equivariant_map(source, target, degree, {})


def selection_map(volley: Volley, selector: NearestSelector) -> FinitaryMap:
    """The selection of a volley made by a selector at every cell."""
    defaults = {symbol: values[0] for symbol, values in volley.table.items()}
    return FinitaryMap(volley, defaults, selector=selector)


def _tainted(psi: FinitaryMap, phi: FinitaryMap) -> set[Cell]:
    """Cells y of phi's source where psi(phi(y)) is not the equivariant value."""
    cells = set(phi.overrides)
    group = phi.source.group
    for symbol, chain in phi.defaults.items():
        for hit in chain.terms:
            for override in psi.overrides:
                if override.symbol == hit.symbol:
                    g = group.mul(override.form, group.inverse(hit.form))
                    cells.add(Cell(symbol, g))
    return cells


def compose_maps(psi: FinitaryMap, phi: FinitaryMap) -> FinitaryMap:
    """psi after phi, a selection of the composed volley when that stays small."""
    if psi.selector is not None or phi.selector is not None:
        msg = "Maps driven by a selector cannot be composed"
        raise FinitaryError(msg)
    if phi.target != psi.source:
        msg = "The target of the first map is not the source of the second"
        raise FinitaryError(msg)
    defaults = {
        symbol: psi.equivariant_part(chain) for symbol, chain in phi.defaults.items()
    }
    overrides = {cell: psi(phi.image(cell)) for cell in _tainted(psi, phi)}
    try:
        volley = compose_volleys(psi.volley, phi.volley)
    except FinitaryError:
        volley = None
    if (
        volley is not None
        and all(defaults[symbol] in volley.table[symbol] for symbol in defaults)
        and all(volley.contains(cell, chain) for cell, chain in overrides.items())
    ):
        return FinitaryMap(volley, defaults, overrides)
    return map_with_overrides(
        phi.source, psi.target, phi.degree + psi.degree, defaults, overrides
    )


def translate_map(phi: FinitaryMap, g: Form) -> FinitaryMap:
    """(g phi)(y) = g phi(g^-1 y); equivariant parts are unchanged."""
    if phi.selector is not None:
        msg = "Maps driven by a selector cannot be translated"
        raise FinitaryError(msg)
    group = phi.source.group
    overrides = {
        Cell(cell.symbol, group.mul(g, cell.form)): chain.translate(g)
        for cell, chain in phi.overrides.items()
    }
    return FinitaryMap(phi.volley, phi.defaults, overrides)


def iterate(phi: FinitaryMap, k: int) -> FinitaryMap:
    """phi composed with itself k times; k = 0 gives the identity."""
    if k < 0:
        msg = "Iteration count must be nonnegative"
        raise FinitaryError(msg)
    if phi.source != phi.target or phi.degree != 0:
        msg = "Only degree-0 endomorphisms can be iterated"
        raise FinitaryError(msg)
    if k == 0:
        return identity_map(phi.source)
    result = phi
    for _ in range(k - 1):
        result = compose_maps(phi, result)
    return result


def map_with_overrides(
    source: ChainComplex,
    target: ChainComplex,
    degree: int,
    defaults: Mapping[str, Chain],
    overrides: Mapping[Cell, Chain],
) -> FinitaryMap:
    """A finitary map whose volley holds exactly its default and override values."""
    group = source.group
    table: dict[str, tuple[Chain, ...]] = {}
    for k, basis in enumerate(source.bases):
        for symbol in basis:
            default = defaults.get(symbol, target.zero(k + degree))
            extra = [
                value.translate(group.inverse(cell.form))
                for cell, value in overrides.items()
                if cell.symbol == symbol
            ]
            table[symbol] = tuple(dict.fromkeys([default, *extra]))
    full_defaults = {symbol: values[0] for symbol, values in table.items()}
    return FinitaryMap(Volley(source, target, degree, table), full_defaults, overrides)
