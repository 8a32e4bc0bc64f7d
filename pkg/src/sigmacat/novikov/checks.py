"""Consistency checks around Novikov homology and Lipschitz deformations."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Any

from sigmacat.complexes import Chain, ChainComplex, direct_sum_complex
from sigmacat.finitary import FinitaryMap, Window
from sigmacat.geometry import ControlledModel, Direction, ModelSpace

from .homology import UNKNOWN, VANISHES, tor_vanishing_test


@dataclass
class LipschitzReport:
    """Cells y where v(sigma(y)) < v(y) - (constant + slope * v(y))."""

    checked: int = 0
    violations: list[tuple[Any, Any, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Whether no cell violated the bound."""
        return not self.violations


def lipschitz_check(  # noqa: PLR0913
    cm: ControlledModel,
    e: Direction,
    sigma: FinitaryMap,
    constant: Any,
    slope: Any = 0,
    window: int = 2,
    dimensions: Iterable[int] | None = None,
) -> LipschitzReport:
    """Check the deformation bound nu(s) = constant + slope * s on a window.

    Constant bounds come from finitary homotopies; a positive slope allows
    the loss to grow linearly with the level.
    """
    e = cm.model.scale_direction(e)
    source = sigma.source
    dims = list(dimensions) if dimensions is not None else list(range(source.length))
    report = LipschitzReport()
    for k in dims:
        for cell in Window(window, tuple(dims)).cells(source, k):
            value = cm.cell_value(e, cell)
            image = sigma(Chain.cell(source.group, source.ring, k, cell))
            report.checked += 1
            if not image.terms:
                continue
            achieved = cm.value(e, image)
            if achieved < value - (constant + slope * value):
                report.violations.append((cell, value, achieved))
    return report


@dataclass
class ExactSequenceReport:
    """Vanishing flags of A', A = A' + A'' and A'' per dimension."""

    rows: list[dict[str, Any]] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Whether the direct-sum rule and the exact-sequence pattern held."""
        return not self.failures


def les_consistency(  # noqa: PLR0913
    base: ChainComplex,
    model: ModelSpace,
    e: Direction,
    n: int,
    ranks: tuple[int, int] = (1, 1),
    floor: int = 8,
    window: int = 2,
) -> ExactSequenceReport:
    """Tor vanishing on the split sequence K^r' -> K^(r'+r'') -> K^r''.

    Resolutions of the three modules are direct sums of ``base``, a
    resolution of K. The middle term vanishes exactly when both ends do,
    and when A'' vanishes through n + 1 the flags of A' and A agree.
    """
    left, right = ranks
    complexes = {
        "A'": direct_sum_complex(base, left),
        "A": direct_sum_complex(base, left + right),
        "A''": direct_sum_complex(base, right),
    }
    report = ExactSequenceReport()
    flags: dict[str, dict[int, str]] = {name: {} for name in complexes}
    for k in range(n + 2):
        row: dict[str, Any] = {"k": k}
        for name, complex_ in complexes.items():
            result = tor_vanishing_test(complex_, model, e, k, floor, window)
            flags[name][k] = result.status
            row[name] = result.status
        report.rows.append(row)
    for k in range(n + 1):
        sub, whole, quotient = flags["A'"][k], flags["A"][k], flags["A''"][k]
        if UNKNOWN in (sub, whole, quotient):
            continue
        both = sub == VANISHES and quotient == VANISHES
        if (whole == VANISHES) != both:
            report.failures.append(
                f"k={k}: A gives {whole} but A' gives {sub} and A'' gives {quotient}"
            )
    if all(flags["A''"][k] == VANISHES for k in range(n + 2)):
        for k in range(n + 1):
            sub, whole = flags["A'"][k], flags["A"][k]
            if UNKNOWN not in (sub, whole) and sub != whole:
                report.failures.append(
                    f"k={k}: A'' vanishes but A' gives {sub} and A gives {whole}"
                )
    return report
