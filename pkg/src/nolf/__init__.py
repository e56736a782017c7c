"""Dehn twist factorizations on non-orientable surface fibers, their lifts
to the orientation double cover, homology invariants and move search."""

from .curves import CurveDictionary, OrientedCurve, TwoSidedCurve, standard_dictionary
from .errors import (
    IllegalMoveError,
    InvariantError,
    NolfError,
    ParseError,
    UnsupportedHypothesis,
)
from .homology import IntMatrix, Lattice, deck_involution, pairing, transvection
from .invariants import (
    FibrationSummary,
    cover_genus_from_euler,
    euler_characteristic,
    s2_closure_check,
    summarize,
)
from .lifting import (
    AchiralWord,
    CoverLetter,
    check_homomorphism,
    lift_letter,
    lift_word,
)
from .search import (
    SearchConfig,
    SearchOutcome,
    bfs_equivalent,
    lifted_move_chain,
    quick_distinguish,
    replay,
)
from .words import (
    Letter,
    Move,
    MoveCertificate,
    MoveKind,
    Word,
    commute_adjacent,
    conjugate_all,
    delete_cancelling_pair,
    free_reduce,
    insert_cancelling_pair,
    normalize_positive,
    theta_flip,
    word_monodromy,
)

__all__ = [
    "AchiralWord",
    "CoverLetter",
    "CurveDictionary",
    "FibrationSummary",
    "IllegalMoveError",
    "IntMatrix",
    "InvariantError",
    "Lattice",
    "Letter",
    "Move",
    "MoveCertificate",
    "MoveKind",
    "NolfError",
    "OrientedCurve",
    "ParseError",
    "SearchConfig",
    "SearchOutcome",
    "TwoSidedCurve",
    "UnsupportedHypothesis",
    "Word",
    "bfs_equivalent",
    "check_homomorphism",
    "commute_adjacent",
    "conjugate_all",
    "cover_genus_from_euler",
    "deck_involution",
    "delete_cancelling_pair",
    "euler_characteristic",
    "free_reduce",
    "insert_cancelling_pair",
    "lift_letter",
    "lift_word",
    "lifted_move_chain",
    "normalize_positive",
    "pairing",
    "quick_distinguish",
    "replay",
    "s2_closure_check",
    "standard_dictionary",
    "summarize",
    "theta_flip",
    "transvection",
    "word_monodromy",
]
