"""Pure-Python all-pairs duel sweep; reference semantics for both backends.

Input dice are triples of packed face codes (digits read base 10, which
preserves the positional comparison order for equal-length faces) plus the
ternary word of each die, with dice listed in lexicographic word order.

A pair passes when the die favored by the cycle at the first differing trit
wins exactly 5 of the 9 face comparisons and none of them tie; everything
else becomes a failure record. With one face multiplicity across a family,
these counts over the 3x3 distinct-face grid are the exact duel
probabilities times 9.
"""

from __future__ import annotations

from typing import Sequence


def sweep(
    faces: Sequence[tuple[int, int, int]],
    words: Sequence[tuple[int, ...]],
    n: int,
    k: int,
) -> tuple[list[int], list[tuple[int, int, int, int]]]:
    """Check every unordered pair of dice.

    Returns (pairs checked per first-difference level, failure records),
    each failure a (i, j, wins of i, ties) tuple in (i, j) order, which is
    lexicographic word order.
    """
    checked = [0] * k
    failures: list[tuple[int, int, int, int]] = []
    for i in range(n - 1):
        a0, a1, a2 = faces[i]
        wi = words[i]
        for j in range(i + 1, n):
            wj = words[j]
            p = 0
            while wi[p] == wj[p]:
                p += 1
            checked[p] += 1
            b0, b1, b2 = faces[j]
            wins = (
                (a0 > b0) + (a0 > b1) + (a0 > b2)
                + (a1 > b0) + (a1 > b1) + (a1 > b2)
                + (a2 > b0) + (a2 > b1) + (a2 > b2)
            )
            ties = (
                (a0 == b0) + (a0 == b1) + (a0 == b2)
                + (a1 == b0) + (a1 == b1) + (a1 == b2)
                + (a2 == b0) + (a2 == b1) + (a2 == b2)
            )
            expected = 5 if (wi[p] + 1) % 3 == wj[p] else 4
            if wins != expected or ties != 0:
                failures.append((i, j, wins, ties))
    return checked, failures
