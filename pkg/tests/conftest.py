"""Shared test fixtures: hypothesis strategies, assignment pools, CLI runner.

The assignment pools are built with the naive counting oracles below (not
the library's validators) so that family-level property tests draw from
independently certified construction data.
"""

from __future__ import annotations

import io
import random
import sys
from contextlib import redirect_stderr, redirect_stdout

import pytest
from hypothesis import settings, strategies as st

from metadice.cli import main
from metadice.dice import Die
from metadice.loshu import AssignmentStack, DigitAssignment, LevelRule
from metadice.sweep import available_backends

settings.register_profile("metadice", deadline=None)
settings.load_profile("metadice")


def naive_leading_counts(subsets) -> list[int]:
    """Cross-pair win counts around the cycle, by explicit double loop."""
    counts = []
    for s in range(3):
        t = (s + 1) % 3
        c = 0
        for x in subsets[s]:
            for y in subsets[t]:
                if x > y:
                    c += 1
        counts.append(c)
    return counts


def naive_rankwise_counts(subsets) -> list[int]:
    """Same-rank win counts around the cycle, by explicit loop."""
    counts = []
    for s in range(3):
        t = (s + 1) % 3
        c = 0
        for i in range(3):
            if subsets[s][i] > subsets[t][i]:
                c += 1
        counts.append(c)
    return counts


def _assignment_pool(is_valid, seed: int, want: int = 60):
    rng = random.Random(seed)
    digits = list(range(1, 10))
    pool, seen = [], set()
    for _ in range(500_000):
        if len(pool) >= want:
            break
        rng.shuffle(digits)
        subsets = (tuple(digits[0:3]), tuple(digits[3:6]), tuple(digits[6:9]))
        if subsets in seen:
            continue
        seen.add(subsets)
        if is_valid(subsets):
            pool.append(DigitAssignment(subsets))
    assert len(pool) >= want, "assignment pool search did not converge"
    return tuple(pool)


LEADING_POOL = _assignment_pool(
    lambda s: naive_leading_counts(s) == [5, 5, 5], seed=2024_01
)
RANKWISE_POOL = _assignment_pool(
    lambda s: naive_rankwise_counts(s) == [2, 2, 2], seed=2024_02
)


def face_digits(k: int):
    return st.tuples(*([st.integers(1, 9)] * k))


@st.composite
def die_pair(draw, max_depth=3):
    """Two dice sharing one digit length, arbitrary faces and multiplicities."""
    k = draw(st.integers(1, max_depth))

    def one():
        entries = draw(
            st.lists(
                st.tuples(face_digits(k), st.integers(1, 3)),
                min_size=1,
                max_size=4,
            )
        )
        return Die(tuple(entries))

    return one(), one()


@st.composite
def valid_stacks(draw, max_depth=3):
    """Random valid stacks: leading-valid level 1, rank-wise deeper levels."""
    depth = draw(st.integers(1, max_depth))
    levels = [LevelRule(draw(st.sampled_from(LEADING_POOL)))]
    for level in range(2, depth + 1):
        base = draw(st.sampled_from(RANKWISE_POOL))
        if draw(st.booleans()):
            levels.append(LevelRule(base, draw(st.integers(1, level - 1))))
        else:
            levels.append(LevelRule(base))
    return AssignmentStack(tuple(levels))


@pytest.fixture(params=available_backends())
def backend(request):
    return request.param


def run_cli_main(argv, stdin_text=None):
    """Invoke the CLI in process; returns (exit code, stdout, stderr)."""
    out_io, err_io = io.StringIO(), io.StringIO()
    old_stdin = sys.stdin
    if stdin_text is not None:
        sys.stdin = io.StringIO(stdin_text)
    try:
        with redirect_stdout(out_io), redirect_stderr(err_io):
            code = main(argv)
    finally:
        sys.stdin = old_stdin
    return code, out_io.getvalue(), err_io.getvalue()


@pytest.fixture
def run_cli():
    return run_cli_main
