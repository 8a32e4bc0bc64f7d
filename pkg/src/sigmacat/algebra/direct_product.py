from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .base import Form, GroupBackend


@dataclass(frozen=True)
class DirectProduct(GroupBackend):
    """The direct product of two backends; normal forms are pairs.

    Right-factor generator names that clash with the left factor get a
    trailing prime, so ``F2 x F2`` has generators ``a, b, a', b'``.
    """

    left: GroupBackend
    right: GroupBackend
    generators: tuple[str, ...] = field(init=False)

    def __post_init__(self) -> None:
        taken = set(self.left.generators)
        renamed = []
        for symbol in self.right.generators:
            name = symbol
            while name in taken:
                name += "'"
            taken.add(name)
            renamed.append(name)
        object.__setattr__(self, "generators", (*self.left.generators, *renamed))

    def name(self) -> str:
        return f"{self.left.name()} x {self.right.name()}"

    @property
    def identity(self) -> Form:
        return (self.left.identity, self.right.identity)

    def mul(self, x: Form, y: Form) -> Form:
        return (self.left.mul(x[0], y[0]), self.right.mul(x[1], y[1]))

    def inverse(self, x: Form) -> Form:
        return (self.left.inverse(x[0]), self.right.inverse(x[1]))

    def letter(self, index: int, exponent: int = 1) -> Form:
        split = self.left.rank()
        if index < split:
            return (self.left.letter(index, exponent), self.right.identity)
        return (self.left.identity, self.right.letter(index - split, exponent))

    def exponent_sums(self, x: Form) -> tuple[int, ...]:
        return (*self.left.exponent_sums(x[0]), *self.right.exponent_sums(x[1]))

    def length(self, x: Form, limit: int = 64) -> int:
        return self.left.length(x[0], limit) + self.right.length(x[1], limit)

    def embed(self, x: Form, side: int) -> Form:
        """Include a factor's normal form; ``side`` is 0 (left) or 1 (right)."""
        if side == 0:
            return (x, self.right.identity)
        return (self.left.identity, x)

    def format(self, x: Form) -> str:
        parts = []
        if x[0] != self.left.identity:
            parts.append(self.left.format(x[0]))
        if x[1] != self.right.identity:
            right = self.right.format(x[1])
            for old, new in zip(
                self.right.generators,
                self.generators[self.left.rank() :],
                strict=True,
            ):
                if old != new:
                    right = " ".join(
                        new + piece[len(old) :] if piece.split("^")[0] == old else piece
                        for piece in right.split(" ")
                    )
            parts.append(right)
        return " ".join(parts) or "1"

    def to_json(self) -> dict[str, Any]:
        return {
            "family": "product",
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }
