import random

import pytest
from hypothesis import strategies as st

from homobraid.braids import BraidWord, parse_word

BETA_PRIME_TEXT = "3 4^-1 1^-2 3^2 2^2 4^-1 1^-1 3^2 2 4^-1"
BETA_COMP_TEXT = "3^5 1^-3 2^3 4^-3"
SIX_THREE_TEXT = "1^-2 2 1^-1 2^2"


@pytest.fixture
def beta_prime() -> BraidWord:
    return parse_word(BETA_PRIME_TEXT)


@pytest.fixture
def beta_comp() -> BraidWord:
    return parse_word(BETA_COMP_TEXT)


@pytest.fixture
def six_three() -> BraidWord:
    return parse_word(SIX_THREE_TEXT)


@st.composite
def braid_words(draw, max_strands=6, max_letters=12, homogeneous=False):
    n = draw(st.integers(1, max_strands))
    if n == 1:
        return BraidWord(1)
    signs = [draw(st.sampled_from((1, -1))) for _ in range(n - 1)]
    gens = draw(st.lists(st.integers(1, n - 1), max_size=max_letters))
    if homogeneous:
        ints = [g * signs[g - 1] for g in gens]
    else:
        ints = [g * draw(st.sampled_from((1, -1))) for g in gens]
    return BraidWord.from_ints(ints, n)


def random_homogeneous(rng: random.Random, max_strands: int, max_letters: int) -> BraidWord:
    n = rng.randint(2, max_strands)
    signs = [rng.choice((1, -1)) for _ in range(n - 1)]
    c = rng.randint(0, max_letters)
    return BraidWord.from_ints([(g := rng.randint(1, n - 1)) * signs[g - 1] for _ in range(c)], n)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
