from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import sympy
from sympy.polys.domains import GF, QQ, ZZ

from .base import AlgebraError

RING_KINDS = ("integers", "rationals", "prime")


class GroundRingMismatchError(AlgebraError):
    """Raised when group-ring elements over different ground rings are combined."""

    def __init__(self, left: GroundRing, right: GroundRing) -> None:
        super().__init__(f"Ground ring mismatch: {left} vs {right}")


@dataclass(frozen=True)
class GroundRing:
    """The exact coefficient ring K: integers, rationals or a prime field."""

    kind: str = "rationals"
    prime: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in RING_KINDS:
            msg = f"Unknown ground ring '{self.kind}'"
            raise AlgebraError(msg)
        if self.kind == "prime" and (
            self.prime is None or not sympy.isprime(self.prime)
        ):
            msg = f"GF(p) needs a prime p, got {self.prime}"
            raise AlgebraError(msg)

    @property
    def domain(self) -> Any:
        """The sympy domain doing the arithmetic."""
        if self.kind == "integers":
            return ZZ
        if self.kind == "rationals":
            return QQ
        return GF(self.prime)

    @property
    def is_field(self) -> bool:
        """Whether every nonzero scalar is invertible."""
        return self.kind != "integers"

    def scalar(self, value: object) -> Any:
        """Convert an int, a ``"p/q"`` string or a sympy number to a scalar."""
        domain = self.domain
        if isinstance(value, str):
            value = sympy.Rational(value.strip())
        if isinstance(value, int):
            return domain(value)
        if isinstance(value, sympy.Rational):
            if value.q == 1:
                return domain(int(value.p))
            if not self.is_field:
                msg = f"{value} is not an integer"
                raise AlgebraError(msg)
            return domain(int(value.p)) / domain(int(value.q))
        return domain.convert(value)

    def is_unit(self, value: Any) -> bool:
        """Whether a scalar is invertible in K."""
        if not value:
            return False
        if self.kind == "integers":
            return value in (ZZ.one, -ZZ.one)
        return True

    def inverse(self, value: Any) -> Any:
        """Multiplicative inverse of a unit."""
        if not self.is_unit(value):
            msg = f"{self.dump(value)} is not invertible in {self}"
            raise AlgebraError(msg)
        if self.kind == "integers":
            return value
        return self.domain.one / value

    def dump(self, value: Any) -> str:
        """Serialize a scalar as an exact string."""
        return str(self.domain.to_sympy(value))

    def __str__(self) -> str:
        if self.kind == "prime":
            return f"GF({self.prime})"
        return self.kind

    def to_json(self) -> dict[str, Any]:
        """Serialize the ring descriptor."""
        return {"kind": self.kind, "prime": self.prime}

    @classmethod
    def from_json(cls, data: Any) -> GroundRing:
        """Parse ``"rationals"``, ``"integers"``, ``{"prime": 5}`` or a dump."""
        if isinstance(data, str):
            return cls(kind=data)
        if isinstance(data, dict) and "kind" in data:
            return cls(kind=data["kind"], prime=data.get("prime"))
        if isinstance(data, dict) and "prime" in data:
            return cls(kind="prime", prime=int(data["prime"]))
        msg = f"Invalid ground ring descriptor: {data!r}"
        raise AlgebraError(msg)
