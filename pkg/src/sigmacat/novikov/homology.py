"""Novikov homology of a free resolution by exact Gaussian elimination.

Boundary matrices with entries in the Novikov ring are reduced by
cancelling pairs of basis cells joined by a unit entry. Surviving cycles
are lifted back to the original complex and tested against the image of
the next boundary with windowed truncated solves.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

import sympy

from sigmacat.algebra import GroupRingElem
from sigmacat.complexes import Cell, ChainComplex
from sigmacat.finitary import neighbourhood
from sigmacat.geometry import Direction, ModelSpace
from sigmacat.utils.codec import digest, form_from_json, form_to_json
from sigmacat.utils.linalg import RequiresRationalCoefficientsError, solve

from .ring import (
    NovikovError,
    NovikovRing,
    TruncatedNovikovElem,
    UnsupportedDirectionError,
    invert_if_unit,
)

logger = logging.getLogger(__name__)

VANISHES = "Vanishes"
OBSTRUCTION = "Obstruction"
UNKNOWN = "Unknown"
_PRECISION_ATTEMPTS = 4


@dataclass(frozen=True, eq=False)
class NovikovChain:
    """A chain sum_x r_x x with Novikov coefficients."""

    dimension: int
    coefficients: Mapping[str, TruncatedNovikovElem]

    @property
    def floor(self) -> Any:
        """Least floor among the coefficients."""
        return min((r.floor for r in self.coefficients.values()), default=sympy.oo)

    def is_zero(self) -> bool:
        """Whether every coefficient vanishes modulo its floor."""
        return all(r.is_zero() for r in self.coefficients.values())

    def truncated(self, floor: Any) -> NovikovChain:
        """Every coefficient read modulo ``floor``."""
        return NovikovChain(
            self.dimension,
            {symbol: r.truncated(floor) for symbol, r in self.coefficients.items()},
        )

    def format(self) -> str:
        """Readable rendering such as ``(1 - b)(...) x_a + x_b``."""
        pieces = [
            f"({r.part.format()}) {symbol}"
            for symbol, r in sorted(self.coefficients.items())
            if not r.is_zero()
        ]
        return " + ".join(pieces) if pieces else "0"

    def to_json(self) -> dict[str, Any]:
        """Serializable form with exact coefficients."""
        return {
            "dimension": self.dimension,
            "coefficients": {
                symbol: {
                    "floor": str(r.floor),
                    "terms": [
                        [form_to_json(g), r.part.ring.dump(c)]
                        for g, c in sorted(r.part.terms.items())
                    ],
                }
                for symbol, r in sorted(self.coefficients.items())
            },
        }

    @classmethod
    def from_json(
        cls, data: dict[str, Any], ring: NovikovRing, ground: Any
    ) -> NovikovChain:
        """Inverse of :meth:`to_json`."""
        coefficients = {}
        for symbol, entry in data["coefficients"].items():
            part = GroupRingElem(
                ring.group,
                ground,
                {
                    form_from_json(form): ground.scalar(value)
                    for form, value in entry["terms"]
                },
            )
            floor = sympy.sympify(entry["floor"], rational=True)
            coefficients[symbol] = TruncatedNovikovElem(ring, part, floor)
        return cls(int(data["dimension"]), coefficients)


def novikov_boundary(
    complex_: ChainComplex, ring: NovikovRing, chain: NovikovChain
) -> NovikovChain:
    """d(sum r_x x) = sum r_x d(x), computed in the Novikov ring."""
    k = chain.dimension
    ground = complex_.ring
    result: dict[str, TruncatedNovikovElem] = {
        symbol: ring.zero(ground) for symbol in complex_.basis(k - 1)
    }
    for symbol, r in chain.coefficients.items():
        stored = complex_.boundaries.get(symbol)
        if stored is None:
            continue
        for face in stored.symbols():
            entry = ring.element(stored.component(face))
            result[face] = result[face] + r * entry
    return NovikovChain(k - 1, result)


@dataclass
class Vanishes:
    """Every basis cell of dimension k cancelled against a unit entry."""

    dimension: int
    transcript: list[dict[str, Any]] = field(default_factory=list)
    status: str = VANISHES


@dataclass
class NovikovUnknown:
    """The reduction stalled without a verified obstruction."""

    dimension: int
    reason: str
    transcript: list[dict[str, Any]] = field(default_factory=list)
    status: str = UNKNOWN


@dataclass(eq=False)
class ObstructionClass:
    """A cycle of the Novikov complex shown not to bound at floors T and 2T."""

    dimension: int
    e: Direction
    floor: Any
    witness: NovikovChain
    stable: bool
    transcript: list[dict[str, Any]]
    survivors: list[str]
    digest: str = ""
    status: str = OBSTRUCTION

    def to_json(self, model: ModelSpace) -> dict[str, Any]:
        """Certificate payload."""
        return {
            "dimension": self.dimension,
            "direction": model.direction_to_json(self.e),
            "floor": str(self.floor),
            "witness": self.witness.to_json(),
            "stable": self.stable,
            "transcript": self.transcript,
            "survivors": self.survivors,
            "digest": self.digest,
        }


TorResult = Vanishes | ObstructionClass | NovikovUnknown


@dataclass
class _Reduction:
    bases: dict[int, list[str]]
    matrices: dict[int, dict[tuple[str, str], TruncatedNovikovElem]]
    lifts: dict[str, dict[str, TruncatedNovikovElem]]
    transcript: list[dict[str, Any]]


def _matrices(
    complex_: ChainComplex, ring: NovikovRing, top: int
) -> dict[int, dict[tuple[str, str], TruncatedNovikovElem]]:
    matrices: dict[int, dict[tuple[str, str], TruncatedNovikovElem]] = {}
    for j in range(1, top + 1):
        entries = {}
        for p in complex_.basis(j):
            stored = complex_.boundaries.get(p)
            if stored is None:
                continue
            for q in stored.symbols():
                component = stored.component(q)
                if component.terms:
                    entries[(p, q)] = ring.element(component)
        matrices[j] = entries
    return matrices


def _find_pivot(
    reduction: _Reduction, top: int
) -> tuple[int, str, str, TruncatedNovikovElem] | None:
    for j in range(1, top + 1):
        for p in reduction.bases[j]:
            for q in reduction.bases[j - 1]:
                entry = reduction.matrices[j].get((p, q))
                if entry is None or entry.is_zero():
                    continue
                lowest = entry.lowest_terms()
                if len(lowest) == 1 and entry.part.ring.is_unit(
                    next(iter(lowest.values()))
                ):
                    return j, p, q, entry
    return None


def _eliminate(  # noqa: PLR0913
    reduction: _Reduction,
    j: int,
    p: str,
    q: str,
    u: TruncatedNovikovElem,
    k: int,
    working: Any,
) -> None:
    inverse = invert_if_unit(u, working)
    matrix = reduction.matrices[j]
    rows = [s for s in reduction.bases[j] if s != p]
    columns = [t for t in reduction.bases[j - 1] if t != q]
    for sigma in rows:
        a = matrix.get((sigma, q))
        if a is None or a.is_zero():
            continue
        factor = a * inverse
        for tau in columns:
            b = matrix.get((p, tau))
            if b is None or b.is_zero():
                continue
            current = matrix.get((sigma, tau))
            product = factor * b
            matrix[(sigma, tau)] = product if current is None else current - product
        if j == k:
            lift = reduction.lifts[sigma]
            for symbol, r in reduction.lifts[p].items():
                lift[symbol] = lift.get(symbol, u.ring.zero(u.part.ring)) - factor * r
        matrix.pop((sigma, q), None)
    for key in [key for key in matrix if key[0] == p or key[1] == q]:
        matrix.pop(key)
    if j + 1 in reduction.matrices:
        upper = reduction.matrices[j + 1]
        for key in [key for key in upper if key[1] == p]:
            upper.pop(key)
    if j - 1 in reduction.matrices:
        lower = reduction.matrices[j - 1]
        for key in [key for key in lower if key[0] == q]:
            lower.pop(key)
    reduction.bases[j].remove(p)
    reduction.bases[j - 1].remove(q)
    lowest = u.lowest_terms()
    g, c = next(iter(lowest.items()))
    reduction.transcript.append(
        {
            "dimension": j,
            "pivot": [p, q],
            "leading": [form_to_json(g), u.part.ring.dump(c)],
        }
    )


def _reduce(
    complex_: ChainComplex, ring: NovikovRing, k: int, working: Any
) -> _Reduction:
    top = min(k + 2, complex_.length)
    ground = complex_.ring
    reduction = _Reduction(
        bases={j: list(complex_.basis(j)) for j in range(top + 1)},
        matrices=_matrices(complex_, ring, top),
        lifts={
            symbol: {symbol: ring.one(ground)} for symbol in complex_.basis(k)
        },
        transcript=[],
    )
    while True:
        pivot = _find_pivot(reduction, top)
        if pivot is None:
            return reduction
        j, p, q, u = pivot
        _eliminate(reduction, j, p, q, u, k, working)


def _in_image(  # noqa: PLR0913
    complex_: ChainComplex,
    ring: NovikovRing,
    witness: NovikovChain,
    floor: Any,
    window: int,
) -> bool:
    """Windowed truncated solve of d c = witness modulo valuation >= floor."""
    k = witness.dimension
    ground = complex_.ring
    target: dict[Cell, Any] = {}
    centres = set()
    for symbol, r in witness.coefficients.items():
        for g, c in r.part.terms.items():
            if ring.valuation(g) < floor:
                target[Cell(symbol, g)] = c
                centres.add(g)
    if not target:
        return True
    if not complex_.basis(k + 1):
        return False
    forms = neighbourhood(complex_.group, centres, window)
    columns = {}
    for cell in complex_.cells(k + 1, forms):
        terms = {
            face: c
            for face, c in complex_.boundary_of_cell(cell).terms.items()
            if ring.valuation(face.form) < floor
        }
        columns[cell] = terms
    try:
        return solve(columns, target, ground.domain) is not None
    except RequiresRationalCoefficientsError:
        return False


def _witness(
    complex_: ChainComplex,
    ring: NovikovRing,
    k: int,
    floor: Any,
) -> tuple[_Reduction, dict[str, NovikovChain]]:
    """Reduce with enough working precision for lifts known modulo ``floor``."""
    working = floor
    for _ in range(_PRECISION_ATTEMPTS):
        reduction = _reduce(complex_, ring, k, working)
        lifts = {
            tau: NovikovChain(k, dict(reduction.lifts[tau]))
            for tau in reduction.bases.get(k, [])
        }
        deficit = max(
            (floor - chain.floor for chain in lifts.values()), default=sympy.Integer(0)
        )
        if deficit <= 0:
            return reduction, {
                tau: chain.truncated(floor) for tau, chain in lifts.items()
            }
        working += deficit
    msg = f"Could not reach floor {floor} after {_PRECISION_ATTEMPTS} attempts"
    raise NovikovError(msg)


def _is_cycle(reduction: _Reduction, tau: str, k: int, floor: Any) -> bool:
    if k == 0:
        return True
    return all(
        entry.truncated(floor).is_zero()
        for (row, _), entry in reduction.matrices[k].items()
        if row == tau
    )


def tor_vanishing_test(  # noqa: PLR0913
    complex_: ChainComplex,
    model: ModelSpace,
    e: Direction,
    k: int,
    floor: int = 8,
    window: int = 2,
) -> TorResult:
    """Decide whether H_k of the Novikov complex toward e vanishes.

    Vanishing is exact when every k-cell cancels. A surviving cell whose
    reduced boundary is zero modulo the floor gives a witness cycle; it is
    reported as an obstruction when it is not a boundary at floors T and
    2T on the window, with the lower-floor witness being the truncation of
    the higher one.
    """
    if floor <= 0:
        msg = f"The truncation floor must be positive, got {floor}"
        raise NovikovError(msg)
    if k < 0:
        return Vanishes(k)
    try:
        e = model.scale_direction(e)
        ring = NovikovRing(model, e)
    except UnsupportedDirectionError as err:
        return NovikovUnknown(k, str(err))
    if k > complex_.length or not complex_.basis(k):
        return Vanishes(k)
    reduction, lifts = _witness(complex_, ring, k, floor)
    transcript = reduction.transcript
    survivors = list(reduction.bases.get(k, []))
    if not survivors:
        return Vanishes(k, transcript)
    if not complex_.complete and k + 1 > complex_.top:
        return NovikovUnknown(
            k, f"the complex stops before dimension {k + 1}", transcript
        )
    for tau in survivors:
        if not _is_cycle(reduction, tau, k, floor):
            continue
        witness = lifts[tau]
        if not novikov_boundary(complex_, ring, witness).truncated(floor).is_zero():
            logger.debug("Lift of '%s' is not a cycle modulo %s", tau, floor)
            continue
        if _in_image(complex_, ring, witness, floor, window):
            continue
        _, doubled = _witness(complex_, ring, k, 2 * floor)
        higher = doubled.get(tau)
        if higher is None or _in_image(complex_, ring, higher, 2 * floor, window):
            continue
        stable = _same_chain(higher.truncated(floor), witness)
        obstruction = ObstructionClass(
            dimension=k,
            e=e,
            floor=floor,
            witness=witness,
            stable=stable,
            transcript=transcript,
            survivors=survivors,
        )
        obstruction.digest = transcript_digest(obstruction, model)
        return obstruction
    return NovikovUnknown(
        k,
        f"cells {survivors} survive without unit pivots and no witness was "
        f"certified at floor {floor}",
        transcript,
    )


def _same_chain(left: NovikovChain, right: NovikovChain) -> bool:
    symbols = set(left.coefficients) | set(right.coefficients)
    for symbol in symbols:
        a = left.coefficients.get(symbol)
        b = right.coefficients.get(symbol)
        terms_a = dict(a.part.terms) if a is not None else {}
        terms_b = dict(b.part.terms) if b is not None else {}
        if terms_a != terms_b:
            return False
    return True


def transcript_digest(obstruction: ObstructionClass, model: ModelSpace) -> str:
    """SHA-256 over the elimination transcript and the witness."""
    data = obstruction.to_json(model)
    data.pop("digest")
    return digest(data)


def verify_obstruction(
    obstruction: ObstructionClass,
    complex_: ChainComplex,
    model: ModelSpace,
    window: int = 2,
) -> list[str]:
    """Recheck an obstruction; returns the failed checks."""
    failures = []
    ring = NovikovRing(model, obstruction.e)
    floor = obstruction.floor
    boundary = novikov_boundary(complex_, ring, obstruction.witness)
    if not boundary.truncated(floor).is_zero():
        failures.append("witness is not a cycle modulo the floor")
    replay = tor_vanishing_test(
        complex_, model, obstruction.e, obstruction.dimension, int(floor), window
    )
    if not isinstance(replay, ObstructionClass):
        failures.append(f"replay gives {replay.status}")
    elif replay.digest != obstruction.digest:
        failures.append("replayed transcript digest differs")
    if transcript_digest(obstruction, model) != obstruction.digest:
        failures.append("recorded digest does not match the content")
    return failures


def obstruction_from_json(
    data: dict[str, Any], complex_: ChainComplex, model: ModelSpace
) -> ObstructionClass:
    """Inverse of :meth:`ObstructionClass.to_json`."""
    try:
        e = model.direction_from_json(data["direction"])
        ring = NovikovRing(model, e)
        return ObstructionClass(
            dimension=int(data["dimension"]),
            e=e,
            floor=sympy.sympify(data["floor"], rational=True),
            witness=NovikovChain.from_json(data["witness"], ring, complex_.ring),
            stable=bool(data["stable"]),
            transcript=list(data["transcript"]),
            survivors=list(data["survivors"]),
            digest=data["digest"],
        )
    except (KeyError, TypeError, ValueError) as err:
        msg = f"Malformed obstruction: {err}"
        raise NovikovError(msg) from err

