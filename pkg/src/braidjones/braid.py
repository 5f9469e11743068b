"""Braid words in the Artin braid group B_n.

Words are written in a small ASCII grammar, shell-safe on purpose:

    word := (term)*            terms separated by whitespace
    term := "s" INT ("^" SIGNED_INT)?

``s1^3`` expands to three copies of ``s1``, ``s2^-1`` is a single inverse
letter, and the empty word is the identity braid.  The parser is n-strand
general; strand limits specific to a representation are enforced by the
modules that need them, not here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "BraidGenerator",
    "BraidWord",
    "BraidParseError",
    "parse_braid",
    "render",
    "exponent_sum",
    "invert",
    "concat",
]


class BraidParseError(ValueError):
    """Malformed braid word; ``position`` is the character offset of the bad token."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class BraidGenerator:
    """One letter: sigma_index when sign == +1, its inverse when sign == -1."""

    index: int
    sign: int

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")
        if self.sign not in (1, -1):
            raise ValueError(f"generator sign must be +1 or -1, got {self.sign}")


@dataclass(frozen=True)
class BraidWord:
    """Ordered product of generators of B_strands; immutable, safe to share."""

    strands: int
    letters: tuple[BraidGenerator, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 2:
            raise ValueError(f"need at least 2 strands, got {self.strands}")
        for g in self.letters:
            if g.index > self.strands - 1:
                raise ValueError(
                    f"generator s{g.index} out of range for {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)


_TERM_RE = re.compile(r"s([0-9]+)(?:\^(-?[0-9]+))?\Z")


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse ``text`` into a BraidWord on ``strands`` strands.

    Powers expand left to right, so ``s1^3`` yields three ``s1`` letters and
    a negative power yields |k| inverse letters.  Raises BraidParseError
    (with the offending position) for syntax errors, out-of-range generator
    indices and zero exponents.
    """
    if strands < 2:
        raise ValueError(f"need at least 2 strands, got {strands}")
    letters: list[BraidGenerator] = []
    for token_match in re.finditer(r"\S+", text):
        token = token_match.group(0)
        pos = token_match.start()
        m = _TERM_RE.match(token)
        if m is None:
            raise BraidParseError(f"cannot parse braid term {token!r}", pos)
        index = int(m.group(1))
        if index < 1:
            raise BraidParseError("generator index must be >= 1", pos)
        if index > strands - 1:
            raise BraidParseError(
                f"generator s{index} out of range for {strands} strands", pos
            )
        power = 1 if m.group(2) is None else int(m.group(2))
        if power == 0:
            raise BraidParseError("zero exponent is not allowed", pos)
        sign = 1 if power > 0 else -1
        letters.extend(BraidGenerator(index, sign) for _ in range(abs(power)))
    return BraidWord(strands, tuple(letters))


def render(b: BraidWord) -> str:
    """Canonical printer, one token per letter; parse_braid(render(b), n) == b."""
    return " ".join(
        f"s{g.index}" if g.sign == 1 else f"s{g.index}^-1" for g in b.letters
    )


def exponent_sum(b: BraidWord) -> int:
    """Sum of the letter signs, the exponent count I(b) used in normalization."""
    return sum(g.sign for g in b.letters)


def invert(b: BraidWord) -> BraidWord:
    """Group inverse: reversed letter order with all signs flipped."""
    return BraidWord(
        b.strands,
        tuple(BraidGenerator(g.index, -g.sign) for g in reversed(b.letters)),
    )


def concat(a: BraidWord, b: BraidWord) -> BraidWord:
    """Concatenation (the group product) of two words on the same strand count."""
    if a.strands != b.strands:
        raise ValueError(f"strand counts differ: {a.strands} != {b.strands}")
    return BraidWord(a.strands, a.letters + b.letters)
