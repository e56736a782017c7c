"""Lifting factorizations on N_g to achiral factorizations on the cover.

A positive twist ``t_{c;theta}`` lifts to the pair ``t_s t_{Js}^{-1}``
where ``s`` is the lift selected by ``theta``.  Lifted words live on
Sigma_{g-1}; each lifted letter is a single Dehn twist with sign +-1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .curves import PLUS, CurveDictionary
from .errors import (
    DimensionMismatch,
    InvariantError,
    NotSymplecticError,
    UnsupportedHypothesis,
)
from .homology import (
    HClass,
    IntMatrix,
    canonical_sign,
    compose_word_matrices,
    is_symplectic,
    is_zero,
    twist_left,
)
from .words import BASES, Letter, Word

MIN_LIFT_GENUS = 3


@dataclass(frozen=True)
class CoverLetter:
    """A Dehn twist ``t_lift^exponent`` on the cover.

    The twist about ``-x`` equals the twist about ``x``, so lifts are
    stored sign-normalized.  Lifts of null-homologous curves carry the
    curve's ``tag`` and the ``sheet`` (0 for the selected lift, 1 for the
    other one).
    """

    lift: HClass
    exponent: int = 1
    tag: str | None = None
    sheet: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lift", canonical_sign(tuple(int(c) for c in self.lift)))
        if self.exponent not in (1, -1):
            raise InvariantError(f"exponent must be +1 or -1, got {self.exponent!r}")
        if self.tag is None and is_zero(self.lift):
            raise InvariantError("twist about the zero class needs a null tag")

    def inverse(self) -> "CoverLetter":
        return replace(self, exponent=-self.exponent)

    def __str__(self):
        name = f"null:{self.tag}/{self.sheet}" if self.tag is not None else ",".join(map(str, self.lift))
        return f"t[{name}]^{self.exponent:+d}"


@dataclass(frozen=True)
class AchiralWord:
    """A word of signed Dehn twists on Sigma_k.

    ``dictionary`` (optional) is the N_{k+1} dictionary the word was lifted
    from; it supplies disjointness between lifts of different curves.
    """

    k: int
    base: str
    letters: tuple[CoverLetter, ...] = ()
    dictionary: CurveDictionary | None = None

    orientable = True

    def __post_init__(self):
        if self.base not in BASES:
            raise InvariantError(f"base must be one of {BASES}, got {self.base!r}")
        if self.dictionary is not None and self.dictionary.k != self.k:
            raise DimensionMismatch(f"dictionary for N_{self.dictionary.g} on a genus-{self.k} cover")
        object.__setattr__(self, "letters", tuple(self.letters))
        for l in self.letters:
            self.validate_letter(l)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(map(str, self.letters)) or "1"

    @property
    def rank(self) -> int:
        return 2 * self.k

    @property
    def fiber(self) -> tuple:
        return ("O", self.k)

    @property
    def positive_count(self) -> int:
        return sum(l.exponent == 1 for l in self.letters)

    @property
    def negative_count(self) -> int:
        return sum(l.exponent == -1 for l in self.letters)

    def with_letters(self, letters: Sequence[CoverLetter]) -> "AchiralWord":
        return AchiralWord(self.k, self.base, tuple(letters), self.dictionary)

    def validate_letter(self, l) -> None:
        if not isinstance(l, CoverLetter):
            raise InvariantError(f"{l!r} is not a cover letter")
        if len(l.lift) != self.rank:
            raise DimensionMismatch(f"lift of length {len(l.lift)} on a genus-{self.k} cover")

    def letter_key(self, l: CoverLetter) -> tuple:
        if l.tag is not None:
            return ((1, (), l.tag, l.sheet), l.exponent)
        return ((0, canonical_sign(l.lift), "", 0), l.exponent)

    def letter_from_key(self, key: tuple) -> CoverLetter:
        part, e = key
        if part[0] == 1:
            return CoverLetter((0,) * self.rank, e, part[2], part[3])
        return CoverLetter(part[1], e)

    def _origin(self, part: tuple):
        d = self.dictionary
        if part[0] == 1:
            return (1, (), (), part[2])
        return d.key_of_class(part[1])

    def keys_commute(self, k1: tuple, k2: tuple) -> bool:
        if k1[0] == k2[0]:
            return True
        if self.dictionary is None:
            return False
        o1, o2 = self._origin(k1[0]), self._origin(k2[0])
        return o1 == o2 or self.dictionary.keys_disjoint(o1, o2)

    def key(self) -> tuple:
        return (self.fiber, self.base, tuple(self.letter_key(l) for l in self.letters))

    def letter_matrix(self, l: CoverLetter) -> IntMatrix:
        return twist_left(IntMatrix.identity(self.rank), l.lift, l.exponent)

    def monodromy(self) -> IntMatrix:
        m = IntMatrix.identity(self.rank)
        for l in self.letters:
            m = twist_left(m, l.lift, l.exponent)
        return m

    def check_conjugator(self, m: IntMatrix) -> None:
        if m.n != self.rank:
            raise DimensionMismatch(f"{m.n}x{m.n} conjugator on a rank-{self.rank} lattice")
        if not is_symplectic(m):
            raise NotSymplecticError("conjugator does not preserve the intersection form")
        if self.dictionary is not None and m @ self.dictionary.J != self.dictionary.J @ m:
            # disjointness knowledge comes from N_g, so only lifts may act
            raise InvariantError("conjugator does not commute with J; drop the dictionary to allow it")

    def push_letter(self, m: IntMatrix, l: CoverLetter) -> CoverLetter:
        if l.tag is not None:
            return l
        return CoverLetter(m.apply(l.lift), l.exponent)


def _require_genus(d: CurveDictionary) -> None:
    if d.g < MIN_LIFT_GENUS:
        raise UnsupportedHypothesis(f"lifting requires g >= {MIN_LIFT_GENUS}, got N_{d.g}")


def lift_letter(w: Word, l: Letter) -> tuple[CoverLetter, CoverLetter]:
    """``t_{c;theta}^{+1} -> (t_s, t_{Js}^{-1})``; exponent -1 gives the inverse pair reversed."""
    d = w.dictionary
    _require_genus(d)
    w.validate_letter(l)
    curve = d[l.curve]
    if curve.is_null:
        sel = 0 if l.theta == PLUS else 1
        zero = d.lattice.zero()
        a, b = CoverLetter(zero, 1, curve.tag, sel), CoverLetter(zero, -1, curve.tag, 1 - sel)
    else:
        s, s_bar = d.lift_pair(d.oriented(l.curve, l.theta))
        a, b = CoverLetter(s, 1), CoverLetter(s_bar, -1)
    if l.exponent == 1:
        return a, b
    return b.inverse(), a.inverse()


def lift_word(w: Word) -> AchiralWord:
    _require_genus(w.dictionary)
    letters: list[CoverLetter] = []
    for l in w.letters:
        letters.extend(lift_letter(w, l))
    return AchiralWord(w.dictionary.k, w.base, tuple(letters), w.dictionary)


def eta_matrix(w: Word) -> IntMatrix:
    """Total monodromy via the closed-form eta-image of each letter."""
    return w.monodromy()


def check_homomorphism(w1: Word, w2: Word) -> bool:
    """Lifting a concatenation equals composing the lifts' matrices."""
    if w1.dictionary is not w2.dictionary:
        raise InvariantError("words over different dictionaries")
    joined = w1.with_letters(w1.letters + w2.letters)
    lhs = lift_word(joined).monodromy()
    rhs = compose_word_matrices([lift_word(w1).monodromy(), lift_word(w2).monodromy()])
    return lhs == rhs


def is_pair_lift(aw: AchiralWord) -> bool:
    """Structural test: letters come in pairs ``(t_s, t_{Js}^{-1})``."""
    if aw.dictionary is None or len(aw.letters) % 2:
        return False
    J = aw.dictionary.J
    for x, y in zip(aw.letters[::2], aw.letters[1::2]):
        if x.exponent != 1 or y.exponent != -1:
            return False
        if x.tag is not None or y.tag is not None:
            if x.tag != y.tag or x.sheet == y.sheet:
                return False
        elif canonical_sign(J.apply(x.lift)) != canonical_sign(y.lift):
            return False
    return True
