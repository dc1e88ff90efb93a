"""
Braid words and the word-level combinatorics of their closures.

A braid word on ``n`` strands is a finite sequence of Artin generators
``σ_i^{±1}`` with ``1 <= i <= n-1``.  Everything here works on words, never on
braid group elements: two words representing the same braid are different
inputs.

Textual format: whitespace- or comma-separated tokens ``k`` or ``k^e`` where
``k`` is a nonzero signed integer (``σ_|k|`` with the sign of ``k``) and ``e``
a nonzero signed exponent.  ``"3 -4 1^-2"`` is ``σ_3 σ_4^{-1} σ_1^{-2}``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, NamedTuple, Sequence


class BraidError(ValueError):
    """Base class for errors raised on invalid braid input."""


class ParseError(BraidError):
    def __init__(self, message: str, position: int | None = None, token: str | None = None):
        self.position = position
        self.token = token
        if position is not None:
            message = f"token {position} ({token!r}): {message}"
        super().__init__(message)


class NotHomogeneousError(BraidError):
    pass


class SplitWordError(BraidError):
    pass


class Letter(NamedTuple):
    index: int
    sign: int  # +1 or -1

    def __str__(self) -> str:
        return str(self.index * self.sign)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise BraidError(f"a braid word needs at least one strand, got {self.strands}")
        letters = tuple(Letter(*x) for x in self.letters)
        for x in letters:
            if x.sign not in (1, -1):
                raise BraidError(f"letter sign must be +1 or -1, got {x.sign}")
            if not 1 <= x.index <= self.strands - 1:
                raise BraidError(f"generator σ_{x.index} does not exist on {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def from_ints(cls, ints: Iterable[int], strands: int | None = None) -> BraidWord:
        """Build a word from signed generator indices, e.g. ``[3, -4, -1]``."""
        ints = list(ints)
        if any(k == 0 for k in ints):
            raise BraidError("generator index 0 is not allowed")
        if strands is None:
            strands = max((abs(k) for k in ints), default=0) + 1
        return cls(strands, tuple(Letter(abs(k), 1 if k > 0 else -1) for k in ints))

    def ints(self) -> tuple[int, ...]:
        return tuple(x.index * x.sign for x in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return BraidWord(max(self.strands, other.strands), self.letters + other.letters)

    def count(self, index: int) -> int:
        return sum(1 for x in self.letters if x.index == index)

    def __str__(self) -> str:
        return render_word(self)


_TOKEN = re.compile(r"^([+-]?\d+)(?:\^([+-]?\d+))?$")


def parse_word(text: str, strands: int | None = None) -> BraidWord:
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    ints: list[int] = []
    for pos, token in enumerate(tokens):
        m = _TOKEN.match(token)
        if m is None:
            raise ParseError("expected k or k^e with nonzero integers", pos, token)
        k = int(m.group(1))
        e = int(m.group(2)) if m.group(2) is not None else 1
        if k == 0:
            raise ParseError("generator index must be nonzero", pos, token)
        if e == 0:
            raise ParseError("exponent must be nonzero", pos, token)
        if strands is not None and abs(k) >= strands:
            raise ParseError(f"σ_{abs(k)} does not exist on {strands} strands", pos, token)
        sign = (1 if k > 0 else -1) * (1 if e > 0 else -1)
        ints.extend([abs(k) * sign] * abs(e))
    if strands is None:
        strands = max((abs(k) for k in ints), default=0) + 1
    elif strands < 1:
        raise ParseError(f"strand count must be positive, got {strands}")
    return BraidWord.from_ints(ints, strands)


def render_word(word: BraidWord) -> str:
    parts = []
    for letter, run in groupby(word.letters):
        e = len(list(run))
        if e == 1:
            parts.append(str(letter.index * letter.sign))
        else:
            parts.append(f"{letter.index}^{e * letter.sign}")
    return " ".join(parts)


class Occurrence(enum.Enum):
    ONLY_POSITIVE = "onlyPositive"
    ONLY_NEGATIVE = "onlyNegative"
    ABSENT = "absent"
    MIXED = "mixed"


@dataclass(frozen=True)
class HomogeneityProfile:
    classes: tuple[Occurrence, ...]  # classes[i-1] describes σ_i

    @property
    def is_homogeneous(self) -> bool:
        return Occurrence.MIXED not in self.classes

    def __getitem__(self, index: int) -> Occurrence:
        return self.classes[index - 1]

    def signs(self) -> tuple[int, ...]:
        """+1/-1 per generator, 0 for absent or mixed."""
        table = {Occurrence.ONLY_POSITIVE: 1, Occurrence.ONLY_NEGATIVE: -1}
        return tuple(table.get(c, 0) for c in self.classes)


def homogeneity_profile(word: BraidWord) -> HomogeneityProfile:
    seen: dict[int, set[int]] = {}
    for x in word.letters:
        seen.setdefault(x.index, set()).add(x.sign)
    classes = []
    for i in range(1, word.strands):
        signs = seen.get(i, set())
        if not signs:
            classes.append(Occurrence.ABSENT)
        elif len(signs) == 2:
            classes.append(Occurrence.MIXED)
        elif 1 in signs:
            classes.append(Occurrence.ONLY_POSITIVE)
        else:
            classes.append(Occurrence.ONLY_NEGATIVE)
    return HomogeneityProfile(tuple(classes))


def is_homogeneous(word: BraidWord) -> bool:
    return homogeneity_profile(word).is_homogeneous


def unused_generators(word: BraidWord) -> frozenset[int]:
    used = {x.index for x in word.letters}
    return frozenset(i for i in range(1, word.strands) if i not in used)


def is_split(word: BraidWord) -> bool:
    return bool(unused_generators(word))


def split_components(word: BraidWord) -> list[BraidWord]:
    """Cut the strands at every unused generator; indices are shifted to start at 1."""
    return [comp for _, comp in split_components_with_offsets(word)]


def split_components_with_offsets(word: BraidWord) -> list[tuple[int, BraidWord]]:
    """Like :func:`split_components`, pairing each component with the number of strands below it."""
    cuts = sorted(unused_generators(word))
    bounds = [0, *cuts, word.strands]
    out = []
    for lo, hi in zip(bounds, bounds[1:]):
        # strands lo+1 .. hi, generators lo+1 .. hi-1
        letters = tuple(Letter(x.index - lo, x.sign) for x in word.letters if lo < x.index < hi)
        out.append((lo, BraidWord(hi - lo, letters)))
    return out


def subword(word: BraidWord, i: int, j: int) -> BraidWord:
    """The word on generators ``i..j`` only, shifted down so that σ_i becomes σ_1."""
    if not 1 <= i <= j <= word.strands - 1:
        raise BraidError(f"need 1 <= i <= j <= {word.strands - 1}, got i={i}, j={j}")
    letters = tuple(Letter(x.index - i + 1, x.sign) for x in word.letters if i <= x.index <= j)
    return BraidWord(j - i + 2, letters)


@dataclass(frozen=True)
class SeesawProfile:
    values: dict[int, int]

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def as_tuple(self) -> tuple[int, ...]:
        return tuple(self.values[i] for i in sorted(self.values))


def seesaw_number(word: BraidWord, i: int) -> int:
    """Number of maximal same-generator blocks of the restriction to σ_{i-1}, σ_i."""
    if not 2 <= i <= word.strands - 1:
        raise BraidError(f"seesaw numbers are defined for 2 <= i <= {word.strands - 1}, got {i}")
    restricted = (x.index for x in word.letters if x.index in (i - 1, i))
    return sum(1 for _ in groupby(restricted))


def seesaw_profile(word: BraidWord) -> SeesawProfile:
    return SeesawProfile({i: seesaw_number(word, i) for i in range(2, word.strands)})


@dataclass(frozen=True)
class DestabilizationResult:
    reduced: BraidWord
    m_minus: int
    m_plus: int


def _top_destabilizable(word: BraidWord) -> bool:
    return word.strands >= 2 and word.count(word.strands - 1) == 1


def _bottom_destabilizable(word: BraidWord) -> bool:
    return word.strands >= 2 and word.count(1) == 1


def destabilize_top(word: BraidWord) -> BraidWord:
    if not _top_destabilizable(word):
        raise BraidError("σ_{n-1} must occur exactly once")
    top = word.strands - 1
    return BraidWord(word.strands - 1, tuple(x for x in word.letters if x.index != top))


def destabilize_bottom(word: BraidWord) -> BraidWord:
    if not _bottom_destabilizable(word):
        raise BraidError("σ_1 must occur exactly once")
    return BraidWord(word.strands - 1, tuple(Letter(x.index - 1, x.sign) for x in word.letters if x.index != 1))


def destabilize_fully(word: BraidWord) -> DestabilizationResult:
    """
    Markov-destabilize at both ends until neither end admits it.

    Each round tries one top destabilization and then one bottom
    destabilization, so ``"1 2"`` on 3 strands is reduced once at each end.
    """
    m_minus = m_plus = 0
    while True:
        progressed = False
        if _top_destabilizable(word):
            word = destabilize_top(word)
            m_plus += 1
            progressed = True
        if _bottom_destabilizable(word):
            word = destabilize_bottom(word)
            m_minus += 1
            progressed = True
        if not progressed:
            return DestabilizationResult(word, m_minus, m_plus)


@dataclass(frozen=True)
class StrandPermutation:
    images: tuple[int, ...]  # images[p-1] is the exit position of the strand entering at p

    def __call__(self, p: int) -> int:
        return self.images[p - 1]

    def compose(self, after: StrandPermutation) -> StrandPermutation:
        """The permutation of ``self`` followed by ``after``."""
        return StrandPermutation(tuple(after(q) for q in self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, len(self.images) + 1):
            if start in seen:
                continue
            cycle = []
            p = start
            while p not in seen:
                seen.add(p)
                cycle.append(p)
                p = self(p)
            out.append(tuple(cycle))
        return out


def strand_permutation(word: BraidWord) -> StrandPermutation:
    position = list(range(word.strands + 1))  # position[s] for strand entering at s
    where = list(range(word.strands + 1))  # where[p] = strand currently at position p
    for x in word.letters:
        a, b = where[x.index], where[x.index + 1]
        where[x.index], where[x.index + 1] = b, a
        position[a], position[b] = x.index + 1, x.index
    return StrandPermutation(tuple(position[1:]))


@dataclass(frozen=True)
class ClosureStats:
    components: int
    euler_char: int
    first_betti: int | None  # only for non-split words
    genus: int | None
    genus_minimal: bool  # Seifert's algorithm realizes the genus (homogeneous words)
    split_sum: bool  # genus summed over split components


def _connected_genus(word: BraidWord) -> int:
    mu = len(strand_permutation(word).cycles())
    chi = word.strands - len(word)
    twice = 2 - mu - chi
    assert twice % 2 == 0 and twice >= 0, (word, mu, chi)
    return twice // 2


def closure_stats(word: BraidWord) -> ClosureStats:
    mu = len(strand_permutation(word).cycles())
    chi = word.strands - len(word)
    split = is_split(word)
    if split:
        genus = sum(_connected_genus(c) for c in split_components(word))
    else:
        genus = _connected_genus(word)
    return ClosureStats(
        components=mu,
        euler_char=chi,
        first_betti=None if split else 1 - chi,
        genus=genus,
        genus_minimal=is_homogeneous(word),
        split_sum=split,
    )


def torus_exponents(word: BraidWord) -> tuple[int, ...]:
    """Signed letter count per generator: the ``k_i`` of the torus-link pieces."""
    k = [0] * (word.strands - 1)
    for x in word.letters:
        k[x.index - 1] += x.sign
    return tuple(k)


def cyclic_blocks(word: BraidWord, i: int) -> list[tuple[int, tuple[int, ...]]]:
    """
    Blocks of letters on σ_{i-1}/σ_i read around the circle, as
    ``(generator, letter positions)``.

    When the first and last linear blocks use the same generator they are
    merged, so the result alternates cyclically and has even length (or is
    a single block).
    """
    positions = [(t, x.index) for t, x in enumerate(word.letters) if x.index in (i - 1, i)]
    blocks = [(g, tuple(t for t, _ in run)) for g, run in groupby(positions, key=lambda p: p[1])]
    if len(blocks) > 1 and blocks[0][0] == blocks[-1][0]:
        g, last = blocks.pop()
        blocks[0] = (g, last + blocks[0][1])
    return blocks


def words_on(strands: int, length: int, signs: Sequence[int] | None = None) -> Iterable[BraidWord]:
    """Every word of the given length; with ``signs``, only the homogeneous words with that sign per generator."""
    from itertools import product

    gens = range(1, strands)
    if signs is None:
        alphabet = [g * s for g in gens for s in (1, -1)]
    else:
        alphabet = [g * signs[g - 1] for g in gens]
    for ints in product(alphabet, repeat=length):
        yield BraidWord.from_ints(ints, strands)
