"""Sparse exact linear algebra over sympy ground domains.

Columns and rows are addressed by hashable labels (cells of a chain complex,
group elements, ...). Systems are assembled as sparse ``DomainMatrix`` objects
and reduced with ``rref`` over the field of fractions of the ground domain.
"""

from __future__ import annotations

from collections.abc import Hashable, Mapping, Sequence
from typing import Any

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyerrors import CoercionFailed

Column = Mapping[Hashable, Any]


class LinearAlgebraError(Exception):
    """Base exception for exact linear algebra failures."""


class RequiresRationalCoefficientsError(LinearAlgebraError):
    """Raised when a system over the integers only has non-integral solutions."""

    def __init__(self) -> None:
        super().__init__("Solution requires rational coefficients.")


def _field_of(domain: Any) -> Any:
    return domain.get_field() if not domain.is_Field else domain


def _assemble(
    columns: Sequence[Column],
    row_labels: Sequence[Hashable],
    domain: Any,
) -> DomainMatrix:
    field = _field_of(domain)
    row_index = {label: i for i, label in enumerate(row_labels)}
    rows: dict[int, dict[int, Any]] = {}
    for j, column in enumerate(columns):
        for label, value in column.items():
            if value:
                rows.setdefault(row_index[label], {})[j] = field.convert_from(
                    value,
                    domain,
                )
    return DomainMatrix(rows, (len(row_labels), len(columns)), field)


def _reduced(matrix: DomainMatrix) -> tuple[dict[int, dict[int, Any]], tuple]:
    reduced, pivots = matrix.rref()
    return dict(reduced.to_sparse().rep), tuple(pivots)


def _row_labels(columns: Sequence[Column], extra: Column | None) -> list[Hashable]:
    seen: dict[Hashable, None] = {}
    for column in columns:
        for label in column:
            seen.setdefault(label, None)
    if extra is not None:
        for label in extra:
            seen.setdefault(label, None)
    return list(seen)


def _back_to_domain(value: Any, domain: Any) -> Any:
    field = _field_of(domain)
    if field == domain:
        return value
    try:
        return domain.convert_from(value, field)
    except CoercionFailed as err:
        raise RequiresRationalCoefficientsError from err


def solve(
    columns: Mapping[Hashable, Column],
    target: Column,
    domain: Any,
) -> dict[Hashable, Any] | None:
    """Find coefficients ``x`` with ``sum x[c] * columns[c] == target``.

    Returns ``None`` when the system is inconsistent. Free variables are set to
    zero, so earlier columns are preferred as pivots: callers order ``columns``
    by preference.
    """
    labels = list(columns)
    column_list = [columns[label] for label in labels]
    rows = _row_labels(column_list, target)
    if not rows:
        return {}
    augmented = _assemble([*column_list, target], rows, domain)
    reduced, pivots = _reduced(augmented)
    width = len(labels)
    if width in pivots:
        return None
    solution: dict[Hashable, Any] = {}
    for i, pivot in enumerate(pivots):
        value = reduced.get(i, {}).get(width)
        if value:
            solution[labels[pivot]] = _back_to_domain(value, domain)
    return solution


def kernel(columns: Mapping[Hashable, Column], domain: Any) -> list[dict]:
    """Return a basis of the relations ``sum x[c] * columns[c] == 0``."""
    labels = list(columns)
    column_list = [columns[label] for label in labels]
    rows = _row_labels(column_list, None)
    if not rows:
        return [{label: domain.one} for label in labels]
    reduced, pivots = _reduced(_assemble(column_list, rows, domain))
    pivot_set = set(pivots)
    basis = []
    for free in range(len(labels)):
        if free in pivot_set:
            continue
        vector = {labels[free]: _field_of(domain).one}
        for i, pivot in enumerate(pivots):
            value = reduced.get(i, {}).get(free)
            if value:
                vector[labels[pivot]] = -value
        basis.append(_integral(vector, domain))
    return basis


def rank(columns: Mapping[Hashable, Column], domain: Any) -> int:
    """Rank of the span of the given columns."""
    column_list = list(columns.values())
    rows = _row_labels(column_list, None)
    if not rows or not column_list:
        return 0
    _, pivots = _reduced(_assemble(column_list, rows, domain))
    return len(pivots)


def _integral(vector: dict[Hashable, Any], domain: Any) -> dict[Hashable, Any]:
    """Clear denominators of a kernel vector when working over the integers."""
    if domain != ZZ:
        return vector
    denominator = ZZ.one
    for value in vector.values():
        denominator = ZZ.lcm(denominator, QQ.denom(value))
    return {
        label: ZZ.convert_from(value * denominator, QQ)
        for label, value in vector.items()
    }
