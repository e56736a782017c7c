"""Factorization words over N_g and the elementary moves between them.

A :class:`Word` is a sequence of letters ``t_{c;theta}^{+-1}`` over a curve
dictionary and a base (``D2`` or ``S2``).  Lifted words on the cover
(:class:`nolf.lifting.AchiralWord`) implement the same small protocol, so
every move function here works on both.

Letter keys
-----------
Each letter has a canonical key ``(curve_part, sign)``.  For a letter on
N_g the sign records which lift receives the right-handed twist after
applying ``t_{c;theta} = t_{c;-theta}^{-1}``; the key does not depend on
the curve's id, the sign of the stored lift, or which lift was stored.
Two letters are mutually inverse iff their keys share ``curve_part`` and
have opposite signs.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass, replace
from typing import Sequence

from .curves import MINUS, PLUS, CurveDictionary
from .errors import (
    IllegalMoveError,
    InvariantError,
    UnknownCurveError,
    UnsupportedHypothesis,
)
from .homology import (
    IntMatrix,
    canonical_sign,
    compose_word_matrices,
    twist_pair_matrix,
)

BASES = ("D2", "S2")


@dataclass(frozen=True)
class Letter:
    curve: str
    theta: int = PLUS
    exponent: int = 1

    def __post_init__(self):
        if self.theta not in (PLUS, MINUS):
            raise InvariantError(f"theta must be +1 or -1, got {self.theta!r}")
        if self.exponent not in (1, -1):
            raise InvariantError(f"exponent must be +1 or -1, got {self.exponent!r}")

    def inverse(self) -> "Letter":
        return replace(self, exponent=-self.exponent)

    def flipped(self) -> "Letter":
        """Same element of the mapping class group, written with the other orientation."""
        return Letter(self.curve, -self.theta, -self.exponent)

    def __str__(self):
        return f"t[{self.curve};{'+' if self.theta > 0 else '-'}]^{self.exponent:+d}"


@dataclass(frozen=True)
class Word:
    dictionary: CurveDictionary
    base: str
    letters: tuple[Letter, ...] = ()

    orientable = False

    def __post_init__(self):
        if self.base not in BASES:
            raise InvariantError(f"base must be one of {BASES}, got {self.base!r}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for l in self.letters:
            self.validate_letter(l)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(map(str, self.letters)) or "1"

    @property
    def g(self) -> int:
        return self.dictionary.g

    @property
    def rank(self) -> int:
        return self.dictionary.lattice.rank

    @property
    def fiber(self) -> tuple:
        return ("N", self.dictionary.g)

    @property
    def is_positive(self) -> bool:
        return all(l.exponent == 1 for l in self.letters)

    def with_letters(self, letters: Sequence[Letter]) -> "Word":
        return Word(self.dictionary, self.base, tuple(letters))

    def validate_letter(self, l) -> None:
        if not isinstance(l, Letter):
            raise InvariantError(f"{l!r} is not a letter on N_g")
        if l.curve not in self.dictionary:
            raise UnknownCurveError(f"unknown curve {l.curve!r}")

    # -- keys -------------------------------------------------------------
    def letter_key(self, l: Letter) -> tuple:
        d = self.dictionary
        ck = d.curve_key(l.curve)
        s = l.theta * l.exponent
        if ck[0] == 1 or ck[1] == ck[2]:
            return (ck, s)
        curve = d.curves[l.curve]
        pos_lift = curve.lift if s == PLUS else d.J.apply(curve.lift)
        return (ck, PLUS if canonical_sign(pos_lift) == ck[1] else MINUS)

    def letter_from_key(self, key: tuple) -> Letter:
        rep = self.dictionary._rep[key[0]]
        l = Letter(rep, PLUS, 1)
        return l if self.letter_key(l) == key else Letter(rep, MINUS, 1)

    def keys_commute(self, k1: tuple, k2: tuple) -> bool:
        return k1[0] == k2[0] or self.dictionary.keys_disjoint(k1[0], k2[0])

    def key(self) -> tuple:
        return (self.fiber, self.base, tuple(self.letter_key(l) for l in self.letters))

    # -- homology ---------------------------------------------------------
    def letter_matrix(self, l: Letter) -> IntMatrix:
        """Action of the lift eta(t_{c;theta}^e) = (T_s T_{Js}^{-1})^e, closed form."""
        d = self.dictionary
        curve = d[l.curve]
        if curve.is_null:
            return IntMatrix.identity(self.rank)
        s, s_bar = d.lift_pair(d.oriented(l.curve, l.theta))
        return twist_pair_matrix(s, s_bar, l.exponent)

    def monodromy(self) -> IntMatrix:
        return compose_word_matrices([self.letter_matrix(l) for l in self.letters], n=self.rank)

    # -- conjugation ------------------------------------------------------
    def check_conjugator(self, m: IntMatrix) -> None:
        self.dictionary.check_lift_matrix(m)

    def push_letter(self, m: IntMatrix, l: Letter) -> Letter:
        oc = self.dictionary.push_forward(m, self.dictionary.oriented(l.curve, l.theta), checked=True)
        return Letter(oc.curve.id, oc.theta, l.exponent)


# -- moves on words -------------------------------------------------------


class MoveKind(str, enum.Enum):
    INSERT_LEFT = "InsertPairLeftInv"
    INSERT_RIGHT = "InsertPairRightInv"
    DELETE = "DeletePair"
    COMMUTE = "Commute"
    CONJUGATE = "ConjugateAll"
    FLIP = "ThetaFlip"


@dataclass(frozen=True)
class Move:
    kind: MoveKind
    position: int = 0
    letter: object = None
    matrix: IntMatrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", MoveKind(self.kind))


@dataclass(frozen=True)
class MoveCertificate:
    start: str
    moves: tuple[Move, ...] = ()
    end: str = ""

    def __len__(self):
        return len(self.moves)


def word_hash(w) -> str:
    return hashlib.sha256(repr(w.key()).encode()).hexdigest()[:16]


def are_inverse(w, x, y) -> bool:
    kx, ky = w.letter_key(x), w.letter_key(y)
    return kx[0] == ky[0] and kx[1] == -ky[1]


def _check_index(w, i: int, span: int = 1) -> None:
    if not 0 <= i <= len(w.letters) - span:
        raise IllegalMoveError(f"position {i} out of bounds for a word of length {len(w.letters)}")


def theta_flip(w: Word, i: int) -> Word:
    if w.orientable:
        raise UnsupportedHypothesis("theta flip has no meaning on an orientable fiber")
    _check_index(w, i)
    letters = list(w.letters)
    letters[i] = letters[i].flipped()
    return w.with_letters(letters)


def normalize_positive(w: Word) -> Word:
    if w.orientable:
        raise UnsupportedHypothesis("positive normalization needs a non-orientable fiber")
    return w.with_letters([l.flipped() if l.exponent < 0 else l for l in w.letters])


def insert_cancelling_pair(w, pos: int, letter, order: str = "left"):
    """Insert ``(letter^-1, letter)`` (order="left") or ``(letter, letter^-1)``."""
    if not 0 <= pos <= len(w.letters):
        raise IllegalMoveError(f"insertion position {pos} out of bounds for length {len(w.letters)}")
    w.validate_letter(letter)
    if order == "left":
        pair = [letter.inverse(), letter]
    elif order == "right":
        pair = [letter, letter.inverse()]
    else:
        raise IllegalMoveError(f"unknown insertion order {order!r}")
    letters = list(w.letters)
    letters[pos:pos] = pair
    return w.with_letters(letters)


def delete_cancelling_pair(w, pos: int):
    _check_index(w, pos, 2)
    x, y = w.letters[pos], w.letters[pos + 1]
    if not are_inverse(w, x, y):
        raise IllegalMoveError(f"letters {x} and {y} at {pos} are not mutually inverse")
    return w.with_letters(w.letters[:pos] + w.letters[pos + 2:])


def commute_adjacent(w, pos: int):
    _check_index(w, pos, 2)
    x, y = w.letters[pos], w.letters[pos + 1]
    if not w.keys_commute(w.letter_key(x), w.letter_key(y)):
        raise IllegalMoveError(f"curves of {x} and {y} at {pos} are not declared disjoint")
    letters = list(w.letters)
    letters[pos], letters[pos + 1] = y, x
    return w.with_letters(letters)


def conjugate_all(w, m: IntMatrix):
    """Simultaneous conjugation: replace every curve by its image under ``m``.

    The total monodromy becomes ``m @ monodromy @ m^{-1}``.
    """
    try:
        w.check_conjugator(m)
    except InvariantError as e:
        raise IllegalMoveError(f"invalid conjugator: {e}") from e
    return w.with_letters([w.push_letter(m, l) for l in w.letters])


def word_monodromy(w) -> IntMatrix:
    return w.monodromy()


def apply_move(w, move: Move):
    k = move.kind
    if k is MoveKind.INSERT_LEFT:
        return insert_cancelling_pair(w, move.position, move.letter, "left")
    if k is MoveKind.INSERT_RIGHT:
        return insert_cancelling_pair(w, move.position, move.letter, "right")
    if k is MoveKind.DELETE:
        return delete_cancelling_pair(w, move.position)
    if k is MoveKind.COMMUTE:
        return commute_adjacent(w, move.position)
    if k is MoveKind.CONJUGATE:
        if move.matrix is None:
            raise IllegalMoveError("conjugation move without a matrix")
        return conjugate_all(w, move.matrix)
    if k is MoveKind.FLIP:
        return theta_flip(w, move.position)
    raise IllegalMoveError(f"unknown move kind {k!r}")


def apply_moves(w, moves: Sequence[Move]):
    """Apply moves in order; an illegal move reports its 0-based step index."""
    for i, mv in enumerate(moves):
        try:
            w = apply_move(w, mv)
        except (IllegalMoveError, InvariantError, UnsupportedHypothesis) as e:
            raise IllegalMoveError(str(e), step=i) from e
    return w


# fixed-position instances of the elementary moves


def insert_after_next(w, i: int):
    """``l_1..l_i l_{i+1} (l_i^-1 l_i) l_{i+2}..`` with 0-based ``i``."""
    _check_index(w, i, 2)
    return insert_cancelling_pair(w, i + 2, w.letters[i], "left")


def insert_before_current(w, i: int):
    """``l_1..l_{i-1} (l_{i+1} l_{i+1}^-1) l_i l_{i+1}..`` with 0-based ``i``."""
    _check_index(w, i, 2)
    return insert_cancelling_pair(w, i, w.letters[i + 1], "right")


# -- free cancellation ----------------------------------------------------


def free_reduce(w):
    """Leftmost-first cancellation; returns the reduced word and the deletions."""
    moves = []
    letters = list(w.letters)
    keys = [w.letter_key(l) for l in letters]
    i = 0
    while i < len(keys) - 1:
        a, b = keys[i], keys[i + 1]
        if a[0] == b[0] and a[1] == -b[1]:
            moves.append(Move(MoveKind.DELETE, i))
            del letters[i:i + 2], keys[i:i + 2]
            i = max(i - 1, 0)
        else:
            i += 1
    return w.with_letters(letters), moves


def reduced_length(w) -> int:
    return len(free_reduce(w)[0].letters)


def all_maximal_reductions(keys: Sequence[tuple]) -> set[tuple]:
    """Every terminal key sequence reachable by deleting cancelling pairs in any order."""
    seen: dict[tuple, None] = {}
    terminals: set[tuple] = set()
    stack = [tuple(keys)]
    while stack:
        cur = stack.pop()
        if cur in seen:
            continue
        seen[cur] = None
        nxt = [
            cur[:p] + cur[p + 2:]
            for p in range(len(cur) - 1)
            if cur[p][0] == cur[p + 1][0] and cur[p][1] == -cur[p + 1][1]
        ]
        if not nxt:
            terminals.add(cur)
        stack.extend(nxt)
    return terminals
