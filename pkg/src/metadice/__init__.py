"""Self-similar nontransitive dice built from the Lo Shu magic square.

The library constructs families of 3^k six-sided dice addressed by ternary
words, where the rock-paper-scissors dominance cycle recurs at every
nesting level: any two distinct dice duel at exactly 5/9 in the direction
given by their first differing trit. Everything is exact rational
arithmetic; ``verify_family`` proves a family's structure by exhaustive
enumeration (with a compiled sweep kernel when available).
"""

from metadice.dice import (
    Die,
    DieParseError,
    DuelResult,
    Face,
    LengthMismatchError,
    TeamOverlapError,
    beats,
    compare_faces,
    duel,
    face_text,
    make_face,
    parse_die,
    round_robin,
)
from metadice.export import (
    DominanceGraph,
    NormalizedPoint,
    build_graph,
    graph_to_json,
    node_name,
    normalized_values,
    points_to_csv,
    to_dot,
)
from metadice.hierarchy import (
    DiceFamily,
    FamilyFormatError,
    LevelSummary,
    PairFailure,
    VerificationReport,
    Word,
    die_number,
    face_value,
    family_from_json,
    family_from_rows,
    family_to_json,
    generate,
    monte_carlo,
    predicted_winner,
    verify_family,
    word_of,
)
from metadice.loshu import (
    RESIDUE_ROWS,
    SORTED_ROWS,
    SQUARE,
    SWAPPED_ROWS,
    AssignmentStack,
    DigitAssignment,
    LevelRule,
    StackValidationError,
    ValidationResult,
    format_stack,
    parse_assignment,
    parse_stack,
    preset_stack,
    rotate,
    sorted_rows,
    validate_leading,
    validate_rankwise,
)
from metadice.sweep import COMPILED_AVAILABLE, available_backends

__version__ = "0.1.0"

__all__ = [
    "AssignmentStack",
    "COMPILED_AVAILABLE",
    "DiceFamily",
    "Die",
    "DieParseError",
    "DigitAssignment",
    "DominanceGraph",
    "DuelResult",
    "Face",
    "FamilyFormatError",
    "LengthMismatchError",
    "LevelRule",
    "LevelSummary",
    "NormalizedPoint",
    "PairFailure",
    "RESIDUE_ROWS",
    "SORTED_ROWS",
    "SQUARE",
    "SWAPPED_ROWS",
    "StackValidationError",
    "TeamOverlapError",
    "ValidationResult",
    "VerificationReport",
    "Word",
    "available_backends",
    "beats",
    "build_graph",
    "compare_faces",
    "die_number",
    "duel",
    "face_text",
    "face_value",
    "family_from_json",
    "family_from_rows",
    "family_to_json",
    "format_stack",
    "generate",
    "graph_to_json",
    "make_face",
    "monte_carlo",
    "node_name",
    "normalized_values",
    "parse_assignment",
    "parse_die",
    "parse_stack",
    "points_to_csv",
    "predicted_winner",
    "preset_stack",
    "rotate",
    "round_robin",
    "sorted_rows",
    "to_dot",
    "validate_leading",
    "validate_rankwise",
    "verify_family",
    "word_of",
]
