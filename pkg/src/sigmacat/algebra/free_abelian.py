from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .base import AlgebraError, Form, GroupBackend


@dataclass(frozen=True)
class FreeAbelian(GroupBackend):
    """The free abelian group Z^n; normal forms are exponent vectors."""

    generators: tuple[str, ...] = ("a", "b")

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            msg = f"Duplicate generator names in {self.generators}"
            raise AlgebraError(msg)

    def name(self) -> str:
        return f"Z^{self.rank()}" if self.rank() != 1 else "Z"

    @property
    def identity(self) -> Form:
        return (0,) * self.rank()

    def mul(self, x: Form, y: Form) -> Form:
        return tuple(i + j for i, j in zip(x, y, strict=True))

    def inverse(self, x: Form) -> Form:
        return tuple(-i for i in x)

    def letter(self, index: int, exponent: int = 1) -> Form:
        form = [0] * self.rank()
        form[index] = exponent
        return tuple(form)

    def power(self, x: Form, exponent: int) -> Form:
        return tuple(i * exponent for i in x)

    def exponent_sums(self, x: Form) -> tuple[int, ...]:
        return tuple(x)

    def length(self, x: Form, limit: int = 64) -> int:  # noqa: ARG002
        return sum(abs(i) for i in x)

    def format(self, x: Form) -> str:
        parts = [
            symbol if exponent == 1 else f"{symbol}^{exponent}"
            for symbol, exponent in zip(self.generators, x, strict=True)
            if exponent
        ]
        return " ".join(parts) or "1"

    def to_json(self) -> dict[str, Any]:
        return {"family": "free_abelian", "generators": list(self.generators)}
