"""Backend selection for the all-pairs duel sweep.

The compiled Cython kernel is picked at import when it was built; otherwise
the pure-Python twin takes over. Both produce identical results, so the
verification report is the same function of the family either way (the
test suite checks this, and ``benchmarks/bench_sweep.py`` compares speeds).

Pairs are mutually independent, so the sweep is trivially parallelizable;
the bundled kernels run single-threaded and emit failures in lexicographic
word-pair order, which keeps reports deterministic.
"""

from __future__ import annotations

from array import array
from typing import Sequence

from metadice import _sweep_py

try:
    from metadice import _sweep_cy
except ImportError:
    _sweep_cy = None

COMPILED_AVAILABLE = _sweep_cy is not None

#: Base-10 packed faces must fit a signed 64-bit word.
PACKED_DEPTH_LIMIT = 18

SweepResult = tuple[list[int], list[tuple[int, int, int, int]]]


def available_backends() -> tuple[str, ...]:
    return ("compiled", "pure") if COMPILED_AVAILABLE else ("pure",)


def resolve_backend(depth: int, backend: str | None = None) -> str:
    """Pick the backend to use; ``None`` selects the best available."""
    if backend is None:
        if COMPILED_AVAILABLE and depth <= PACKED_DEPTH_LIMIT:
            return "compiled"
        return "pure"
    if backend not in ("compiled", "pure"):
        raise ValueError(f"unknown sweep backend {backend!r}")
    if backend == "compiled":
        if not COMPILED_AVAILABLE:
            raise RuntimeError("the compiled sweep backend is not built")
        if depth > PACKED_DEPTH_LIMIT:
            raise ValueError(
                f"compiled backend supports depth <= {PACKED_DEPTH_LIMIT}"
            )
    return backend


def sweep_pairs(
    face_codes: Sequence[tuple[int, int, int]],
    words: Sequence[tuple[int, ...]],
    *,
    backend: str | None = None,
) -> SweepResult:
    """Run the all-pairs check on packed faces and words.

    ``face_codes[i]`` holds die i's three faces packed base 10; ``words[i]``
    its ternary address. Dice must be in lexicographic word order.
    """
    n = len(face_codes)
    if n != len(words) or n == 0:
        raise ValueError("need one word per die and at least one die")
    k = len(words[0])
    chosen = resolve_backend(k, backend)
    if chosen == "compiled":
        flat_faces = array("q")
        for triple in face_codes:
            flat_faces.extend(triple)
        flat_words = array("b")
        for w in words:
            flat_words.extend(w)
        return _sweep_cy.sweep(flat_faces, flat_words, n, k)
    return _sweep_py.sweep(
        [tuple(t) for t in face_codes], [tuple(w) for w in words], n, k
    )
