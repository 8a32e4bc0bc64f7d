from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import sympy

from .base import AlgebraError, Form, GroupBackend


@dataclass(frozen=True)
class BaumslagSolitar(GroupBackend):
    """The solvable Baumslag-Solitar group BS(1,m) = <a, t | t a t^-1 = a^m>.

    Normal forms are triples ``(p, q, r)`` standing for ``t^-p a^q t^r`` with
    ``p, r >= 0`` and ``m`` not dividing ``q`` whenever ``p`` and ``r`` are
    both positive. Arithmetic goes through the affine picture
    ``z -> m^n z + x`` with ``x = q / m^p`` and ``n = r - p``.
    """

    m: int = 2
    generators: tuple[str, ...] = ("a", "t")

    def __post_init__(self) -> None:
        if self.m < 2:  # noqa: PLR2004
            msg = f"BS(1,m) needs m >= 2, got {self.m}"
            raise AlgebraError(msg)
        if len(self.generators) != 2 or len(set(self.generators)) != 2:  # noqa: PLR2004
            msg = f"BS(1,m) needs two distinct generator names, got {self.generators}"
            raise AlgebraError(msg)

    def name(self) -> str:
        return f"BS(1,{self.m})"

    @property
    def identity(self) -> Form:
        return (0, 0, 0)

    def _normalize(self, numerator: int, depth: int, shift: int) -> Form:
        """Normal form of the affine map with ``x = numerator / m^depth``."""
        m = self.m
        while depth > 0 and numerator % m == 0:
            numerator //= m
            depth -= 1
        if numerator == 0:
            depth = 0
        if shift + depth >= 0:
            return (depth, numerator, shift + depth)
        return (-shift, numerator * m ** (-shift - depth), 0)

    def mul(self, x: Form, y: Form) -> Form:
        p1, q1, r1 = x
        p2, q2, r2 = y
        n1 = r1 - p1
        depth = max(p1, p2 - n1, 0)
        numerator = q1 * self.m ** (depth - p1) + q2 * self.m ** (depth - p2 + n1)
        return self._normalize(numerator, depth, n1 + r2 - p2)

    def inverse(self, x: Form) -> Form:
        p, q, r = x
        return self._normalize(-q, r, p - r)

    def letter(self, index: int, exponent: int = 1) -> Form:
        if index == 0:
            return (0, exponent, 0)
        return (-exponent, 0, 0) if exponent < 0 else (0, 0, exponent)

    def exponent_sums(self, x: Form) -> tuple[int, ...]:
        p, _, r = x
        return (0, r - p)

    def affine(self, x: Form) -> tuple[sympy.Rational, int]:
        """The pair ``(x, n)`` of the affine map ``z -> m^n z + x``."""
        p, q, r = x
        return sympy.Rational(q, self.m**p), r - p

    def length(self, x: Form, limit: int = 64) -> int:  # noqa: ARG002
        """Word length from the affine picture.

        A word realising ``(x, n)`` walks the t-heights of an interval
        ``[lo, hi]`` and writes ``x * m^-lo`` in base m with one digit per
        height, the top digit unbounded. Balanced digits are optimal, so only
        ``hi`` has to be searched.
        """
        value, n = self.affine(x)
        depth = 0
        while (value * self.m**depth).q != 1:
            depth += 1
        lo = min(0, n, -depth)
        scaled = int(value * self.m**-lo)
        first = max(0, n)
        spread = 0
        while self.m**spread <= abs(scaled):
            spread += 1
        return min(
            (hi - lo)
            + min(hi - n - lo, hi + n - lo)
            + self._digit_cost(scaled, hi - lo)
            for hi in range(first, max(first, spread + lo) + 3)
        )

    def _digit_cost(self, number: int, levels: int) -> int:
        """Least sum of ``|c_j|`` with ``sum c_j m^j = number`` for j <= levels."""
        states = {number: 0}
        for _ in range(levels):
            following: dict[int, int] = {}
            for value, cost in states.items():
                low = value % self.m
                for digit in (low, low - self.m):
                    carried = (value - digit) // self.m
                    spent = cost + abs(digit)
                    if spent < following.get(carried, spent + 1):
                        following[carried] = spent
            states = following
        return min(cost + abs(value) for value, cost in states.items())

    def format(self, x: Form) -> str:
        p, q, r = x
        a, t = self.generators
        parts = []
        if p:
            parts.append(f"{t}^-{p}")
        if q:
            parts.append(a if q == 1 else f"{a}^{q}")
        if r:
            parts.append(t if r == 1 else f"{t}^{r}")
        return " ".join(parts) or "1"

    def to_json(self) -> dict[str, Any]:
        return {
            "family": "baumslag_solitar",
            "m": self.m,
            "generators": list(self.generators),
        }
