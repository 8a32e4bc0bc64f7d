"""Coefficient modules A = KG^r / R given by group-ring column generators."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from sigmacat.algebra import Form, GroupBackend, GroupRingElem, GroundRing
from sigmacat.utils.linalg import Column, solve

from .chains import Cell, Chain, ComplexError
from .complex import ChainComplex

ModuleColumn = tuple[GroupRingElem, ...]


class ModuleDescriptorError(ComplexError):
    """Raised when a module descriptor is malformed."""


@dataclass(frozen=True)
class QuotientModule:
    """The quotient of KG^r by the submodule spanned by ``relations``.

    Each relation is a column of r group-ring elements. The trivial module
    K^r is the quotient by ``(s - 1) e_j`` for every generator ``s``.
    Membership in the relation submodule is decided on finite windows of
    left translates, so every answer is relative to the forms it is given.
    """

    group: GroupBackend
    ring: GroundRing
    rank: int
    relations: tuple[ModuleColumn, ...]
    trivial: bool = False

    def __post_init__(self) -> None:
        if self.rank < 1:
            msg = f"A module needs rank >= 1, got {self.rank}"
            raise ModuleDescriptorError(msg)
        for relation in self.relations:
            if len(relation) != self.rank:
                msg = f"A relation has {len(relation)} entries, not {self.rank}"
                raise ModuleDescriptorError(msg)

    @classmethod
    def trivial_module(
        cls, group: GroupBackend, ring: GroundRing, rank: int = 1
    ) -> QuotientModule:
        """K^r with every generator acting as the identity."""
        one = GroupRingElem.one(group, ring)
        zero = GroupRingElem.zero(group, ring)
        relations = []
        for index in range(group.rank()):
            s = GroupRingElem(group, ring, {group.letter(index): ring.domain.one})
            relations.extend(
                tuple(s - one if j == i else zero for j in range(rank))
                for i in range(rank)
            )
        return cls(group, ring, rank, tuple(relations), trivial=True)

    @classmethod
    def from_json(
        cls, data: dict[str, Any], group: GroupBackend, ring: GroundRing
    ) -> QuotientModule:
        """Read ``{rank, relations}``; relation terms are ``[component, word, c]``.

        Without ``relations`` the descriptor is the trivial module.
        """
        rank = int(data.get("rank", 1))
        if "relations" not in data:
            return cls.trivial_module(group, ring, rank)
        relations = []
        for entry in data["relations"]:
            pairs: list[list[tuple[str, object]]] = [[] for _ in range(rank)]
            for component, word, coefficient in entry:
                if not 0 <= int(component) < rank:
                    msg = f"Component {component} is outside a rank {rank} module"
                    raise ModuleDescriptorError(msg)
                pairs[int(component)].append((str(word), coefficient))
            relations.append(
                tuple(GroupRingElem.of(group, ring, terms) for terms in pairs)
            )
        return cls(group, ring, rank, tuple(relations))

    def to_json(self) -> dict[str, Any]:
        """Descriptor with relation terms as ``[component, word, coefficient]``."""
        if self.trivial:
            return {"rank": self.rank}
        return {
            "rank": self.rank,
            "relations": [
                [
                    [j, self.group.format(form), str(c)]
                    for j, element in enumerate(relation)
                    for form, c in sorted(element.terms.items())
                ]
                for relation in self.relations
            ],
        }

    def generator(self, j: int, g: Form | None = None) -> ModuleColumn:
        """The column ``g e_j``."""
        g = self.group.identity if g is None else g
        zero = GroupRingElem.zero(self.group, self.ring)
        unit = GroupRingElem(self.group, self.ring, {g: self.ring.domain.one})
        return tuple(unit if i == j else zero for i in range(self.rank))

    def cell_column(self, cell: Cell, augmentation: Sequence[Any]) -> Column:
        """The image of a 0-cell ``g x`` whose basis cell maps to sum eps_j e_j."""
        return {(j, cell.form): value for j, value in enumerate(augmentation) if value}

    def relation_columns(self, forms: Iterable[Form]) -> dict[Hashable, Column]:
        """Left translates ``h r`` of every relation for ``h`` in ``forms``."""
        columns: dict[Hashable, Column] = {}
        for h in forms:
            for index, relation in enumerate(self.relations):
                columns[("relation", index, h)] = as_column(
                    tuple(entry.translate(h) for entry in relation)
                )
        return columns

    def image(self, complex_: ChainComplex, chain: Chain) -> Column:
        """eps(c) in KG^r for a 0-chain ``c`` of ``complex_``."""
        image: dict[Hashable, Any] = {}
        zero = self.ring.domain.zero
        for cell, c in chain.terms.items():
            column = self.cell_column(cell, complex_.augmentation[cell.symbol])
            for label, value in column.items():
                image[label] = image.get(label, zero) + c * value
        return {label: value for label, value in image.items() if value}

    def spans(self, target: Column, forms: Iterable[Form]) -> bool:
        """Whether ``target`` is a combination of relation translates over ``forms``."""
        if not any(target.values()):
            return True
        return solve(self.relation_columns(forms), target, self.ring.domain) is not None

    def contains(self, column: ModuleColumn, forms: Iterable[Form]) -> bool:
        """Whether ``column`` is zero in A, as seen from translates over ``forms``."""
        return self.spans(as_column(column), forms)


def as_column(column: ModuleColumn) -> Column:
    """Sparse coordinates ``(component, form) -> coefficient`` of a column."""
    return {
        (j, form): c
        for j, element in enumerate(column)
        for form, c in element.terms.items()
    }
