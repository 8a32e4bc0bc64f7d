from __future__ import annotations

from dataclasses import asdict, dataclass, fields
from typing import Any


@dataclass(frozen=True)
class Budgets:
    """Search limits shared by the Sigma procedures.

    ``window`` is the word-metric radius of finite windows; ``push_budget``
    bounds the power of the ascending word tried as a dimension-0 push;
    ``lag_budget`` bounds how far thresholds drop when bounding cycles;
    ``truncation`` is the Novikov floor T.
    """

    window: int = 2
    push_budget: int = 3
    nu: int = 1
    lag_budget: int = 3
    levels: tuple[int, ...] = (0, 1, 2)
    truncation: int = 8
    orbit_depth: int = 1
    samples: int = 8
    farey_order: int = 2
    max_radius: int = 4

    def to_json(self) -> dict[str, Any]:
        """Serialize the budgets."""
        data = asdict(self)
        data["levels"] = list(self.levels)
        return data

    @classmethod
    def from_json(cls, data: dict[str, Any] | None) -> Budgets:
        """Read budgets, ignoring unknown keys and keeping defaults for missing ones."""
        if not data:
            return cls()
        known = {f.name for f in fields(cls)}
        values = {key: value for key, value in data.items() if key in known}
        if "levels" in values:
            values["levels"] = tuple(int(s) for s in values["levels"])
        return cls(**values)
