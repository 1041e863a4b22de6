"""Recursive dice-family generation and exhaustive dominance verification.

A depth-k family holds one die per ternary word of length k. The digit a die
receives at nesting level j is looked up in the stack's level-j table using
the word's j-th trit (the subset) and the face's rank, so dice sharing a word
prefix agree rank-by-rank on all prefix levels. Two distinct dice therefore
duel exactly like their first differing trits: the cycle 0 beats 1 beats 2
beats 0 decides the winner, always at probability 5/9.

``verify_family`` proves that claim for a concrete family by checking every
unordered pair exactly.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from metadice.dice import (
    Die,
    DuelResult,
    Face,
    LengthMismatchError,
    duel,
    face_text,
)
from metadice.loshu import AssignmentStack, parse_stack
from metadice.sweep import resolve_backend, sweep_pairs

Word = tuple[int, ...]


class FamilyFormatError(ValueError):
    """A family document (JSON or listing) violates the schema."""


def die_number(word: Word) -> int:
    """1-based position of a word in its family's numbering (D1, D2, ...).

    Words are numbered lexicographically: n = 1 + sum of w_j * 3^(k-j).
    """
    n = 0
    for t in word:
        if t not in (0, 1, 2):
            raise ValueError(f"word trits must be 0, 1 or 2, got {t}")
        n = 3 * n + t
    return n + 1


def word_of(n: int, depth: int) -> Word:
    """Inverse of :func:`die_number` for a depth-``depth`` family."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    size = 3 ** depth
    if not 1 <= n <= size:
        raise ValueError(f"die number {n} outside 1..{size}")
    rest = n - 1
    trits = []
    for _ in range(depth):
        rest, t = divmod(rest, 3)
        trits.append(t)
    return tuple(reversed(trits))


def predicted_winner(w: Word, v: Word) -> Word | None:
    """The word favored by the first-differing-trit cycle; None when w == v."""
    if len(w) != len(v):
        raise LengthMismatchError("words of different lengths are incomparable")
    for a, b in zip(w, v):
        if a != b:
            return w if (a + 1) % 3 == b else v
    return None


def face_value(word: Word, rank: int, stack: AssignmentStack) -> Face:
    """Digits of the rank-``rank`` face of the die at ``word``."""
    if len(word) != stack.depth:
        raise ValueError(
            f"word length {len(word)} does not match stack depth {stack.depth}"
        )
    if rank not in (0, 1, 2):
        raise ValueError(f"rank must be 0, 1 or 2, got {rank}")
    return tuple(
        stack.assignment_at(j, word[: j - 1])[word[j - 1]][rank]
        for j in range(1, stack.depth + 1)
    )


@dataclass(frozen=True)
class DiceFamily:
    """All 3^depth dice of one construction, addressed by ternary words.

    ``rank_faces[i]`` are die i's faces in rank order; ``dice[i]`` is the
    corresponding die with every face at the family multiplicity. Entries
    follow lexicographic word order, so index = die number - 1. ``stack`` is
    None for families imported from documents that carry no construction.
    """

    depth: int
    multiplicity: int
    words: tuple[Word, ...]
    rank_faces: tuple[tuple[Face, Face, Face], ...]
    stack: AssignmentStack | None = None
    dice: tuple[Die, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.depth < 1:
            raise FamilyFormatError("depth must be at least 1")
        if self.multiplicity < 1:
            raise FamilyFormatError("face multiplicity must be positive")
        size = 3 ** self.depth
        if len(self.words) != size or len(self.rank_faces) != size:
            raise FamilyFormatError(
                f"a depth-{self.depth} family needs exactly {size} dice"
            )
        for idx, word in enumerate(self.words):
            if word != word_of(idx + 1, self.depth):
                raise FamilyFormatError(
                    f"words must cover all of them in lexicographic order;"
                    f" entry {idx} is {word}"
                )
        for word, faces in zip(self.words, self.rank_faces):
            if len(faces) != 3 or len(set(faces)) != 3:
                raise FamilyFormatError(
                    f"die {face_word_label(word)} needs 3 distinct faces"
                )
            if any(len(f) != self.depth for f in faces):
                raise FamilyFormatError(
                    f"die {face_word_label(word)} has a face whose length"
                    f" is not the family depth {self.depth}"
                )
        object.__setattr__(
            self,
            "dice",
            tuple(
                Die.from_values(faces, self.multiplicity)
                for faces in self.rank_faces
            ),
        )

    @property
    def size(self) -> int:
        return len(self.words)

    def die_at(self, word: Word) -> Die:
        return self.dice[die_number(word) - 1]

    def faces_at(self, word: Word) -> tuple[Face, Face, Face]:
        return self.rank_faces[die_number(word) - 1]


def face_word_label(word: Word) -> str:
    """Human label for a word: its D-number plus the trits."""
    return f"D{die_number(word)} ({''.join(str(t) for t in word)})"


def generate(stack: AssignmentStack, multiplicity: int = 2) -> DiceFamily:
    """Fill the whole depth-``stack.depth`` family from an assignment stack.

    Stack validity is established at stack construction; this walk only
    reads tables. Dice come out pairwise distinct because the level-1
    digits already separate the three subsets (asserted as a sanity net).
    """
    if multiplicity < 1:
        raise ValueError("face multiplicity must be positive")
    k = stack.depth
    words = tuple(itertools.product((0, 1, 2), repeat=k))
    rank_faces = []
    for w in words:
        tables = [stack.assignment_at(j, w[: j - 1]) for j in range(1, k + 1)]
        rank_faces.append(
            tuple(
                tuple(tables[j][w[j]][rank] for j in range(k))
                for rank in range(3)
            )
        )
    family = DiceFamily(k, multiplicity, words, tuple(rank_faces), stack)
    assert len(set(family.dice)) == len(family.dice), "generated dice collide"
    return family


@dataclass(frozen=True)
class PairFailure:
    """One pair that missed the exact (5/9, 0, 4/9) outcome."""

    word_a: Word
    word_b: Word
    expected_winner: Word
    observed: DuelResult

    def describe(self) -> str:
        return (
            f"{face_word_label(self.word_a)} vs {face_word_label(self.word_b)}:"
            f" expected {face_word_label(self.expected_winner)} to win 5/9,"
            f" observed win {self.observed.win} tie {self.observed.tie}"
            f" loss {self.observed.loss}"
        )


@dataclass(frozen=True)
class LevelSummary:
    """All cross-subtree pairs whose first differing trit sits at ``level``."""

    level: int
    pairs: int
    failures: int

    @property
    def ok(self) -> bool:
        return self.failures == 0


@dataclass(frozen=True)
class VerificationReport:
    depth: int
    dice_count: int
    multiplicity: int
    pairs_checked: int
    failures: tuple[PairFailure, ...]
    per_level: tuple[LevelSummary, ...]
    elapsed: float
    backend: str

    @property
    def passed(self) -> bool:
        return not self.failures


def _pack(face: Face) -> int:
    code = 0
    for d in face:
        code = code * 10 + d
    return code


def verify_family(
    family: DiceFamily, *, backend: str | None = None
) -> VerificationReport:
    """Exhaustively check that every pair duels at exactly (5/9, 0, 4/9)
    in favor of :func:`predicted_winner`.

    Failures are data, not errors; the report carries them in lexicographic
    word-pair order together with a per-level summary, so it is the same
    regardless of how the independent pair checks are scheduled.
    """
    start = time.perf_counter()
    chosen = resolve_backend(family.depth, backend)
    codes = [
        (_pack(f0), _pack(f1), _pack(f2)) for f0, f1, f2 in family.rank_faces
    ]
    checked, raw_failures = sweep_pairs(codes, family.words, backend=chosen)
    pairs_checked = sum(checked)
    assert pairs_checked == family.size * (family.size - 1) // 2

    failures = []
    fail_levels: Counter[int] = Counter()
    for i, j, _wins, _ties in raw_failures:
        w, v = family.words[i], family.words[j]
        p = next(idx for idx, (a, b) in enumerate(zip(w, v)) if a != b)
        fail_levels[p] += 1
        failures.append(
            PairFailure(w, v, predicted_winner(w, v), duel(family.dice[i], family.dice[j]))
        )
    per_level = tuple(
        LevelSummary(p + 1, checked[p], fail_levels.get(p, 0))
        for p in range(family.depth)
    )
    return VerificationReport(
        depth=family.depth,
        dice_count=family.size,
        multiplicity=family.multiplicity,
        pairs_checked=pairs_checked,
        failures=tuple(failures),
        per_level=per_level,
        elapsed=time.perf_counter() - start,
        backend=chosen,
    )


def monte_carlo(x: Die, y: Die, trials: int, seed: int = 0) -> float:
    """Estimated frequency of x beating y over seeded independent rolls.

    Deterministic for a fixed seed; ties count as non-wins. This is the
    stochastic cross-check of the exact :func:`metadice.dice.duel` engine.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if x.digit_length != y.digit_length:
        raise LengthMismatchError("dice with different face lengths cannot duel")
    fx = x.expand()
    fy = y.expand()
    nx, ny = len(fx), len(fy)
    rng = random.Random(seed)
    wins = 0
    for _ in range(trials):
        if fx[rng.randrange(nx)] > fy[rng.randrange(ny)]:
            wins += 1
    return wins / trials


def family_to_json(family: DiceFamily) -> dict:
    """The family document: construction echo plus all dice in number order."""
    doc: dict = {"depth": family.depth, "multiplicity": family.multiplicity}
    if family.stack is not None:
        doc["stack"] = family.stack.lines()
    doc["dice"] = [
        {
            "word": list(word),
            "paper_number": die_number(word),
            "faces": [face_text(f) for f in faces],
        }
        for word, faces in zip(family.words, family.rank_faces)
    ]
    return doc


def family_from_json(doc: dict) -> DiceFamily:
    """Rebuild a family from its document form, validating the schema.

    The stack echo, when present, is re-parsed and re-validated; dice are
    checked for completeness and consistent numbering either way, so
    third-party families can be verified without a construction.
    """
    if not isinstance(doc, dict):
        raise FamilyFormatError("family document must be a JSON object")
    try:
        depth = int(doc["depth"])
        entries = doc["dice"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FamilyFormatError(f"missing or bad family field: {exc}") from None
    multiplicity = int(doc.get("multiplicity", 2))
    stack = None
    if doc.get("stack") is not None:
        stack_lines = doc["stack"]
        if not isinstance(stack_lines, list):
            raise FamilyFormatError("stack must be a list of level descriptors")
        stack = parse_stack("\n".join(stack_lines), allow_zero=True)
        if stack.depth != depth:
            raise FamilyFormatError(
                f"stack depth {stack.depth} does not match family depth {depth}"
            )
    if not isinstance(entries, list):
        raise FamilyFormatError("dice must be a list")
    words = []
    rank_faces = []
    for pos, entry in enumerate(entries):
        try:
            word = tuple(int(t) for t in entry["word"])
            face_strings = entry["faces"]
        except (KeyError, TypeError, ValueError):
            raise FamilyFormatError(f"dice entry {pos} is malformed") from None
        if any(t not in (0, 1, 2) for t in word):
            raise FamilyFormatError(f"dice entry {pos} has a bad trit")
        number = entry.get("paper_number")
        if number is not None and int(number) != die_number(word):
            raise FamilyFormatError(
                f"dice entry {pos}: paper_number {number} does not match"
                f" word {list(word)}"
            )
        faces = []
        for s in face_strings:
            if not isinstance(s, str) or not s.isdigit():
                raise FamilyFormatError(
                    f"dice entry {pos}: faces must be digit strings"
                )
            faces.append(tuple(int(c) for c in s))
        words.append(word)
        rank_faces.append(tuple(faces))
    return DiceFamily(depth, multiplicity, tuple(words), tuple(rank_faces), stack)


def family_from_rows(
    face_rows: Iterable[Sequence[str]], multiplicity: int = 2
) -> DiceFamily:
    """Build a family from face-string rows in die-number order.

    Used for the plain text listing format, where the construction is not
    recorded: row n holds the three faces of die n.
    """
    rank_faces = []
    depth = None
    for pos, row in enumerate(face_rows):
        if len(row) != 3:
            raise FamilyFormatError(f"row {pos + 1}: expected 3 faces")
        if not all(isinstance(s, str) and s.isdigit() for s in row):
            raise FamilyFormatError(f"row {pos + 1}: faces must be digit strings")
        if depth is None:
            depth = len(row[0])
        rank_faces.append(tuple(tuple(int(c) for c in s) for s in row))
    if depth is None or depth < 1:
        raise FamilyFormatError("listing contains no dice")
    size = len(rank_faces)
    k = 0
    while 3 ** k < size:
        k += 1
    if 3 ** k != size or k != depth:
        raise FamilyFormatError(
            f"{size} dice with {depth}-digit faces do not form a complete family"
        )
    words = tuple(word_of(n, depth) for n in range(1, size + 1))
    return DiceFamily(depth, multiplicity, words, tuple(rank_faces), None)


FIVE_NINTHS = Fraction(5, 9)
