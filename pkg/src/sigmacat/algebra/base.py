from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

Form = tuple
Word = list[tuple[int, int]]

_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_']*)(?:\^\(?(-?\d+)\)?)?")


class AlgebraError(Exception):
    """Base exception for group and group-ring errors."""


class UnknownGeneratorError(AlgebraError):
    """Raised when a word uses a symbol that is not a generator."""

    def __init__(self, symbol: str) -> None:
        super().__init__(f"Unknown generator symbol '{symbol}'")


class BackendMismatchError(AlgebraError):
    """Raised when elements of different groups are combined."""

    def __init__(self, left: GroupBackend, right: GroupBackend) -> None:
        super().__init__(f"Group mismatch: {left.name()} vs {right.name()}")


class GroupBackend(ABC):
    """A group with a solvable word problem given by unique normal forms.

    Normal forms are nested tuples of integers, so they are hashable and
    totally ordered within one backend.
    """

    generators: tuple[str, ...]

    @abstractmethod
    def name(self) -> str:
        """Return a short description, e.g. 'BS(1,2)'."""

    @property
    @abstractmethod
    def identity(self) -> Form:
        """Normal form of the identity."""

    @abstractmethod
    def mul(self, x: Form, y: Form) -> Form:
        """Normal form of the product ``x * y``."""

    @abstractmethod
    def inverse(self, x: Form) -> Form:
        """Normal form of the inverse."""

    @abstractmethod
    def letter(self, index: int, exponent: int = 1) -> Form:
        """Normal form of the generator power ``s_index ** exponent``."""

    @abstractmethod
    def exponent_sums(self, x: Form) -> tuple[int, ...]:
        """Per-generator exponent sums, where these are well defined.

        Generators whose exponent sum is not an invariant of the element
        (``a`` in BS(1,m)) report 0; actions must translate them trivially.
        """

    @abstractmethod
    def format(self, x: Form) -> str:
        """Human-readable rendering of a normal form."""

    @abstractmethod
    def to_json(self) -> dict[str, Any]:
        """Serializable descriptor of the backend."""

    def rank(self) -> int:
        """Number of generators."""
        return len(self.generators)

    def letters(self) -> list[Form]:
        """Generators and their inverses, in generator order."""
        result = []
        for index in range(self.rank()):
            result.append(self.letter(index, 1))
            result.append(self.letter(index, -1))
        return result

    def power(self, x: Form, exponent: int) -> Form:
        """Normal form of ``x ** exponent``."""
        base = x if exponent >= 0 else self.inverse(x)
        result = self.identity
        for _ in range(abs(exponent)):
            result = self.mul(result, base)
        return result

    def evaluate(self, word: Word) -> Form:
        """Multiply out a word given as ``(generator index, exponent)`` pairs."""
        result = self.identity
        for index, exponent in word:
            result = self.mul(result, self.letter(index, exponent))
        return result

    def parse(self, text: str) -> Word:
        """Parse ``"t a t^-1"`` style text into a word."""
        text = text.replace("⁻¹", "^-1").replace("*", " ").replace(".", " ")
        index_of = {symbol: i for i, symbol in enumerate(self.generators)}
        word: Word = []
        for chunk in text.split():
            if chunk in ("1", "e"):
                continue
            for symbol, exponent in _split_chunk(chunk, index_of):
                word.append((index_of[symbol], exponent))
        return word

    def normal_form(self, text: str | Word) -> GroupElem:
        """Canonical element represented by a word or its textual form."""
        word = self.parse(text) if isinstance(text, str) else text
        for index, _ in word:
            if not 0 <= index < self.rank():
                raise UnknownGeneratorError(str(index))
        return GroupElem(self, self.evaluate(word))

    def element(self, form: Form) -> GroupElem:
        """Wrap a normal form."""
        return GroupElem(self, form)

    def ball(self, radius: int) -> list[Form]:
        """All elements of word length at most ``radius``, by length then form."""
        return list(_ball(self, radius))

    def sphere(self, radius: int) -> list[Form]:
        """All elements of word length exactly ``radius``."""
        inner = set(_ball(self, radius - 1)) if radius > 0 else set()
        return [x for x in _ball(self, radius) if x not in inner]

    def length(self, x: Form, limit: int = 64) -> int:
        """Word length of ``x``, searching balls up to ``limit``."""
        for radius in range(limit + 1):
            if x in _ball_set(self, radius):
                return radius
        msg = f"Element {self.format(x)} is longer than {limit}"
        raise AlgebraError(msg)


def _split_chunk(chunk: str, index_of: dict[str, int]) -> list[tuple[str, int]]:
    pieces = []
    position = 0
    while position < len(chunk):
        match = _TOKEN.match(chunk, position)
        if not match:
            raise UnknownGeneratorError(chunk[position:])
        symbol, exponent = match.group(1), match.group(2)
        power = int(exponent) if exponent is not None else 1
        if symbol in index_of:
            pieces.append((symbol, power))
        elif all(letter in index_of for letter in symbol):
            pieces.extend((letter, 1) for letter in symbol[:-1])
            pieces.append((symbol[-1], power))
        else:
            raise UnknownGeneratorError(symbol)
        position = match.end()
    return pieces


@lru_cache(maxsize=256)
def _ball(group: GroupBackend, radius: int) -> tuple[Form, ...]:
    if radius <= 0:
        return (group.identity,)
    previous = _ball(group, radius - 1)
    seen = set(previous)
    frontier = [x for x in previous if x not in set(_ball(group, radius - 2))]
    if radius == 1:
        frontier = [group.identity]
    fresh = set()
    for x in frontier:
        for letter in group.letters():
            y = group.mul(x, letter)
            if y not in seen:
                fresh.add(y)
    return previous + tuple(sorted(fresh))


@lru_cache(maxsize=256)
def _ball_set(group: GroupBackend, radius: int) -> frozenset[Form]:
    return frozenset(_ball(group, radius))


@dataclass(frozen=True)
class GroupElem:
    """An element of a group backend in normal form."""

    group: GroupBackend
    form: Form

    def __mul__(self, other: GroupElem) -> GroupElem:
        return grp_mul(self, other)

    def inverse(self) -> GroupElem:
        """The inverse element."""
        return GroupElem(self.group, self.group.inverse(self.form))

    def is_identity(self) -> bool:
        """Whether this is the identity."""
        return self.form == self.group.identity

    def __str__(self) -> str:
        return self.group.format(self.form)


def grp_mul(x: GroupElem, y: GroupElem) -> GroupElem:
    """Product of two elements of the same group."""
    if x.group != y.group:
        raise BackendMismatchError(x.group, y.group)
    return GroupElem(x.group, x.group.mul(x.form, y.form))


def normal_form(word: str | Word, group: GroupBackend) -> GroupElem:
    """Canonical form of a word over the generators of ``group``."""
    return group.normal_form(word)
