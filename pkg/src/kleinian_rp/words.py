"""Words in the free group on f, g.

A word is a tuple of non-zero integers: ``1`` is f, ``2`` is g and a
negative entry is the inverse letter.  Only free cancellation is applied.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .algebra import IDENTITY, MoebiusElement, power

LETTERS = {1: "f", 2: "g"}
_BY_NAME = {"f": 1, "g": 2, "F": -1, "G": -2}


def _reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if x == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse letters ``f g F G`` (capitals are inverses); spaces ignored."""
        try:
            return cls(tuple(_BY_NAME[ch] for ch in text if not ch.isspace()))
        except KeyError as exc:
            raise ValueError(f"bad letter {exc.args[0]!r} in word {text!r}") from None

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def swap_inverse(self) -> "Word":
        """Replace every letter by its inverse, in place (conjugation by e)."""
        return Word(tuple(-x for x in self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def evaluate(self, images: Mapping[int, MoebiusElement]) -> MoebiusElement:
        """Substitute matrices; runs of one letter are powered by squaring."""
        result = IDENTITY
        i = 0
        letters = self.letters
        while i < len(letters):
            x = letters[i]
            j = i
            while j < len(letters) and letters[j] == x:
                j += 1
            m = images[abs(x)]
            run = power(m, j - i)
            result = result @ (run if x > 0 else run.inverse())
            i = j
        return result

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts: list[str] = []
        i = 0
        while i < len(self.letters):
            x = self.letters[i]
            j = i
            while j < len(self.letters) and self.letters[j] == x:
                j += 1
            name = LETTERS.get(abs(x), f"a{abs(x)}")
            exp = (j - i) * (1 if x > 0 else -1)
            parts.append(name if exp == 1 else f"{name}^{exp}")
            i = j
        return " ".join(parts)


F = Word((1,))
G = Word((2,))
EMPTY = Word(())


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()
