from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from typing import Any

from .base import BackendMismatchError, Form, GroupBackend, GroupElem
from .scalars import GroundRing, GroundRingMismatchError


@dataclass(frozen=True)
class GroupRingElem:
    """A finite K-linear combination of group elements.

    ``terms`` maps normal forms to nonzero scalars of ``ring.domain``.
    """

    group: GroupBackend
    ring: GroundRing
    terms: Mapping[Form, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "terms", {form: c for form, c in self.terms.items() if c}
        )

    @classmethod
    def zero(cls, group: GroupBackend, ring: GroundRing) -> GroupRingElem:
        """The zero element."""
        return cls(group, ring, {})

    @classmethod
    def one(cls, group: GroupBackend, ring: GroundRing) -> GroupRingElem:
        """The unit element."""
        return cls(group, ring, {group.identity: ring.domain.one})

    @classmethod
    def of(
        cls,
        group: GroupBackend,
        ring: GroundRing,
        pairs: Iterable[tuple[str | Form | GroupElem, object]],
    ) -> GroupRingElem:
        """Build from ``(element, coefficient)`` pairs; elements may be words."""
        terms: dict[Form, Any] = {}
        for element, coefficient in pairs:
            form = _as_form(group, element)
            terms[form] = terms.get(form, ring.domain.zero) + ring.scalar(coefficient)
        return cls(group, ring, terms)

    def _check(self, other: GroupRingElem) -> None:
        if self.group != other.group:
            raise BackendMismatchError(self.group, other.group)
        if self.ring != other.ring:
            raise GroundRingMismatchError(self.ring, other.ring)

    def __add__(self, other: GroupRingElem) -> GroupRingElem:
        return ring_add(self, other)

    def __neg__(self) -> GroupRingElem:
        return GroupRingElem(
            self.group, self.ring, {form: -c for form, c in self.terms.items()}
        )

    def __sub__(self, other: GroupRingElem) -> GroupRingElem:
        return ring_add(self, -other)

    def __mul__(self, other: GroupRingElem) -> GroupRingElem:
        return ring_mul(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return (
            self.group == other.group
            and self.ring == other.ring
            and dict(self.terms) == dict(other.terms)
        )

    def __hash__(self) -> int:
        return hash((self.group, frozenset(self.terms.items())))

    def translate(self, g: Form) -> GroupRingElem:
        """Left multiplication by a group element."""
        mul = self.group.mul
        return GroupRingElem(
            self.group, self.ring, {mul(g, form): c for form, c in self.terms.items()}
        )

    def right_translate(self, g: Form) -> GroupRingElem:
        """Right multiplication by a group element."""
        mul = self.group.mul
        return GroupRingElem(
            self.group, self.ring, {mul(form, g): c for form, c in self.terms.items()}
        )

    def augmentation(self) -> Any:
        """Sum of the coefficients."""
        return sum(self.terms.values(), self.ring.domain.zero)

    def coefficient(self, g: Form) -> Any:
        """Coefficient of ``g`` (zero when absent)."""
        return self.terms.get(g, self.ring.domain.zero)

    def format(self) -> str:
        """Readable rendering such as ``a^2 - 2 a + 1``."""
        if not self.terms:
            return "0"
        pieces = []
        for form in sorted(self.terms):
            coefficient = self.ring.dump(self.terms[form])
            word = self.group.format(form)
            if word == "1":
                pieces.append(coefficient)
            elif coefficient == "1":
                pieces.append(word)
            elif coefficient == "-1":
                pieces.append(f"-{word}")
            else:
                pieces.append(f"{coefficient} {word}")
        return " + ".join(pieces).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.format()


def _as_form(group: GroupBackend, element: str | Form | GroupElem) -> Form:
    if isinstance(element, GroupElem):
        if element.group != group:
            raise BackendMismatchError(element.group, group)
        return element.form
    if isinstance(element, str):
        return group.normal_form(element).form
    return element


def ring_add(u: GroupRingElem, v: GroupRingElem) -> GroupRingElem:
    """Sum of two group-ring elements."""
    u._check(v)  # noqa: SLF001
    terms = dict(u.terms)
    zero = u.ring.domain.zero
    for form, c in v.terms.items():
        terms[form] = terms.get(form, zero) + c
    return GroupRingElem(u.group, u.ring, terms)


def ring_mul(u: GroupRingElem, v: GroupRingElem) -> GroupRingElem:
    """Convolution product of two group-ring elements."""
    u._check(v)  # noqa: SLF001
    terms: dict[Form, Any] = {}
    zero = u.ring.domain.zero
    mul = u.group.mul
    for g, c in u.terms.items():
        for h, d in v.terms.items():
            form = mul(g, h)
            terms[form] = terms.get(form, zero) + c * d
    return GroupRingElem(u.group, u.ring, terms)


def ring_scale(u: GroupRingElem, scalar: GroupRingElem | object) -> GroupRingElem:
    """Multiply by a scalar of the ground ring, or by another element."""
    if isinstance(scalar, GroupRingElem):
        return ring_mul(u, scalar)
    value = u.ring.scalar(scalar)
    terms = {form: c * value for form, c in u.terms.items()}
    return GroupRingElem(u.group, u.ring, terms)


def support(u: GroupRingElem) -> set[GroupElem]:
    """Group elements with nonzero coefficient."""
    return {GroupElem(u.group, form) for form in u.terms}


def fox_derivative(
    word: list[tuple[int, int]], index: int, group: GroupBackend, ring: GroundRing
) -> GroupRingElem:
    """Fox derivative of a word with respect to generator ``index``.

    Uses d(uv) = du + u dv, d(s) = 1 and d(s^-1) = -s^-1 letter by letter.
    """
    one = ring.domain.one
    terms: dict[Form, Any] = {}
    prefix = group.identity
    for letter_index, exponent in word:
        step = 1 if exponent > 0 else -1
        for _ in range(abs(exponent)):
            letter = group.letter(letter_index, step)
            if letter_index == index:
                if step > 0:
                    terms[prefix] = terms.get(prefix, ring.domain.zero) + one
                else:
                    form = group.mul(prefix, letter)
                    terms[form] = terms.get(form, ring.domain.zero) - one
            prefix = group.mul(prefix, letter)
    return GroupRingElem(group, ring, terms)
