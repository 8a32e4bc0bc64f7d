from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .base import AlgebraError, Form, GroupBackend


@dataclass(frozen=True)
class FreeGroup(GroupBackend):
    """The free group F_n; normal forms are freely reduced words.

    A letter is stored as ``+(i + 1)`` for generator ``i`` and ``-(i + 1)``
    for its inverse.
    """

    generators: tuple[str, ...] = ("a", "b")

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            msg = f"Duplicate generator names in {self.generators}"
            raise AlgebraError(msg)

    def name(self) -> str:
        return f"F{self.rank()}"

    @property
    def identity(self) -> Form:
        return ()

    def mul(self, x: Form, y: Form) -> Form:
        cancel = 0
        while cancel < min(len(x), len(y)) and x[-1 - cancel] == -y[cancel]:
            cancel += 1
        return x[: len(x) - cancel] + y[cancel:]

    def inverse(self, x: Form) -> Form:
        return tuple(-letter for letter in reversed(x))

    def letter(self, index: int, exponent: int = 1) -> Form:
        symbol = index + 1 if exponent > 0 else -(index + 1)
        return (symbol,) * abs(exponent)

    def exponent_sums(self, x: Form) -> tuple[int, ...]:
        sums = [0] * self.rank()
        for letter in x:
            sums[abs(letter) - 1] += 1 if letter > 0 else -1
        return tuple(sums)

    def length(self, x: Form, limit: int = 64) -> int:  # noqa: ARG002
        return len(x)

    def format(self, x: Form) -> str:
        if not x:
            return "1"
        parts: list[str] = []
        run_letter, run = x[0], 0
        for letter in (*x, 0):
            if letter == run_letter:
                run += 1
                continue
            symbol = self.generators[abs(run_letter) - 1]
            exponent = run if run_letter > 0 else -run
            parts.append(symbol if exponent == 1 else f"{symbol}^{exponent}")
            run_letter, run = letter, 1
        return " ".join(parts)

    def to_json(self) -> dict[str, Any]:
        return {"family": "free", "generators": list(self.generators)}
