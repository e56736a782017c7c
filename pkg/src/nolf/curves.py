"""Two-sided curves on N_g, modelled by their lifts to the orientation cover.

A curve ``c`` is stored as one lift class ``gamma`` on Sigma_{g-1}; the
other lift is ``J gamma`` for the deck involution ``J``.  An orientation
tag ``theta`` picks which of the two lifts carries the right-handed
twist.  Curves are identified by their canonical lift data, so two ids
registered with the same (sign-normalized, unordered) lift pair are
aliases of one curve.  This is a homological abstraction; distinct
isotopy classes may collide.
"""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass, field
from typing import Iterator

from .errors import (
    DisjointnessError,
    DuplicateCurveError,
    InvariantError,
    NonPrimitiveError,
    NotALiftError,
    NotSymplecticError,
    SelfPairingError,
    UnknownCurveError,
)
from .homology import (
    HClass,
    IntMatrix,
    Lattice,
    canonical_sign,
    deck_involution,
    is_primitive,
    is_symplectic,
    is_zero,
    pairing,
)

PLUS, MINUS = 1, -1

# (kind, first lift, second lift, null tag); kind 0 = homologically
# nontrivial, kind 1 = null-homologous marker.
CurveKey = tuple


class DegenerateCurveWarning(UserWarning):
    """``J gamma = +-gamma``: the lifted twist pair acts trivially on homology."""


@dataclass(frozen=True)
class TwoSidedCurve:
    id: str
    lift: HClass
    tag: str | None = None
    note: str = ""

    @property
    def is_null(self) -> bool:
        return self.tag is not None


@dataclass(frozen=True)
class OrientedCurve:
    curve: TwoSidedCurve
    theta: int = PLUS

    def __post_init__(self):
        if self.theta not in (PLUS, MINUS):
            raise ValueError(f"theta must be +1 or -1, got {self.theta!r}")

    def flipped(self) -> "OrientedCurve":
        return OrientedCurve(self.curve, -self.theta)


def _auto_id(key: CurveKey) -> str:
    digest = hashlib.sha256(repr(key).encode()).hexdigest()[:10]
    return f"auto_{digest}"


class CurveDictionary:
    """Registry of two-sided curves on N_g plus declared disjointness.

    Built single-threaded while loading.  Afterwards the only mutation is
    the find-or-register of pushed curves in :meth:`push_forward`, which
    is idempotent and names curves deterministically from their data.
    """

    def __init__(self, g: int):
        if g < 1:
            raise InvariantError(f"N_g needs g >= 1, got {g}")
        self.g = g
        self.k = g - 1
        self.lattice = Lattice(self.k)
        self.J = deck_involution(self.k)
        self.curves: dict[str, TwoSidedCurve] = {}
        self._rep: dict[CurveKey, str] = {}
        self._key: dict[str, CurveKey] = {}
        self._disjoint: set[frozenset[CurveKey]] = set()
        self.declared: list[tuple[str, str]] = []

    def __repr__(self):
        return f"CurveDictionary(N_{self.g}, {len(self.curves)} curves)"

    def __contains__(self, cid: str) -> bool:
        return cid in self.curves

    def __iter__(self) -> Iterator[TwoSidedCurve]:
        return iter(self.curves.values())

    def __len__(self):
        return len(self.curves)

    def __getitem__(self, cid: str) -> TwoSidedCurve:
        try:
            return self.curves[cid]
        except KeyError:
            raise UnknownCurveError(f"unknown curve {cid!r}") from None

    def key_of_class(self, gamma: HClass, tag: str | None = None) -> CurveKey:
        if tag is not None:
            return (1, (), (), tag)
        p = canonical_sign(gamma)
        q = canonical_sign(self.J.apply(gamma))
        if q < p:
            p, q = q, p
        return (0, p, q, "")

    def curve_key(self, cid: str) -> CurveKey:
        if cid not in self._key:
            raise UnknownCurveError(f"unknown curve {cid!r}")
        return self._key[cid]

    def representative(self, cid: str) -> str:
        """First-registered id sharing this curve's lift data."""
        return self._rep[self.curve_key(cid)]

    def is_degenerate(self, cid: str) -> bool:
        key = self.curve_key(cid)
        return key[0] == 0 and key[1] == key[2]

    def register(self, cid: str, gamma, tag: str | None = None, note: str = "") -> TwoSidedCurve:
        """Validate and store a curve with lift ``gamma``.

        Pass ``tag`` (and a zero class) for a null-homologous curve.
        """
        if cid in self.curves:
            raise DuplicateCurveError(f"curve id {cid!r} already registered")
        gamma = tuple(int(c) for c in gamma)
        self.lattice.check(gamma)
        if tag is not None:
            if not is_zero(gamma):
                raise InvariantError(f"curve {cid!r}: null marker with a nonzero lift")
        else:
            if is_zero(gamma):
                raise NonPrimitiveError(f"curve {cid!r}: zero lift needs an explicit null tag")
            if not is_primitive(gamma):
                raise NonPrimitiveError(f"curve {cid!r}: lift {gamma} is non-primitive")
            jg = self.J.apply(gamma)
            if pairing(gamma, jg) != 0:
                raise SelfPairingError(
                    f"curve {cid!r}: <gamma, J gamma> = {pairing(gamma, jg)} != 0, lifts cannot be disjoint"
                )
            gamma = canonical_sign(gamma)
            if canonical_sign(jg) == gamma:
                warnings.warn(f"curve {cid!r}: J gamma = +-gamma, twist pair acts trivially", DegenerateCurveWarning)
        curve = TwoSidedCurve(cid, gamma, tag, note)
        key = self.key_of_class(gamma, tag)
        self.curves[cid] = curve
        self._key[cid] = key
        self._rep.setdefault(key, cid)
        return curve

    def lookup(self, gamma: HClass, tag: str | None = None) -> str | None:
        return self._rep.get(self.key_of_class(tuple(gamma), tag))

    def declare_disjoint(self, c: str, d: str) -> None:
        kc, kd = self.curve_key(c), self.curve_key(d)
        if kc == kd:
            raise DisjointnessError(f"cannot declare {c!r} disjoint from itself")
        gc, gd = self.curves[c].lift, self.curves[d].lift
        if not (self.curves[c].is_null or self.curves[d].is_null):
            jc, jd = self.J.apply(gc), self.J.apply(gd)
            for x in (gc, jc):
                for y in (gd, jd):
                    if pairing(x, y) != 0:
                        raise DisjointnessError(
                            f"curves {c!r} and {d!r} declared disjoint but lifts pair to {pairing(x, y)}"
                        )
        self._disjoint.add(frozenset((kc, kd)))
        self.declared.append((c, d))

    def are_disjoint(self, c: str, d: str) -> bool:
        return frozenset((self.curve_key(c), self.curve_key(d))) in self._disjoint

    def keys_disjoint(self, kc: CurveKey, kd: CurveKey) -> bool:
        return frozenset((kc, kd)) in self._disjoint

    def oriented(self, cid: str, theta: int = PLUS) -> OrientedCurve:
        return OrientedCurve(self[cid], theta)

    def selected_lift(self, oc: OrientedCurve) -> HClass:
        return self.lift_pair(oc)[0]

    def lift_pair(self, oc: OrientedCurve) -> tuple[HClass, HClass]:
        """``(gamma, J gamma)`` for theta=+, ``(J gamma, gamma)`` for theta=-."""
        curve = self[oc.curve.id]
        gamma = curve.lift
        jg = self.J.apply(gamma)
        return (gamma, jg) if oc.theta == PLUS else (jg, gamma)

    def check_lift_matrix(self, m: IntMatrix) -> None:
        if m.n != self.lattice.rank:
            raise NotALiftError(f"{m.n}x{m.n} matrix on a rank-{self.lattice.rank} lattice")
        if not is_symplectic(m):
            raise NotSymplecticError("matrix does not preserve the intersection form")
        if m @ self.J != self.J @ m:
            raise NotALiftError("M J != J M: not the lift of a mapping class of N_g")

    def push_forward(self, m: IntMatrix, oc: OrientedCurve, *, checked: bool = False) -> OrientedCurve:
        """Image of an oriented curve under the mapping class with lift ``m``.

        The image curve is found by its lift data (or registered under an
        automatic id) and the orientation is chosen so the selected lift
        becomes ``m`` applied to the old selected lift.  Null markers map to
        themselves since their image is invisible on homology.
        """
        if not checked:
            self.check_lift_matrix(m)
        curve = self[oc.curve.id]
        if curve.is_null:
            return oc
        s = m.apply(self.selected_lift(oc))
        cid = self.lookup(s)
        if cid is None:
            key = self.key_of_class(s)
            cid = _auto_id(key)
            if cid in self.curves:
                raise InvariantError(f"automatic id collision on {cid}")
            self.register(cid, key[1], note="pushed")
        target = self.curves[cid]
        if self.is_degenerate(cid):
            theta = oc.theta
        else:
            theta = PLUS if canonical_sign(s) == target.lift else MINUS
        return OrientedCurve(target, theta)


@dataclass
class _Candidate:
    name: str
    lift: HClass
    orbits: frozenset = field(default_factory=frozenset)


def standard_dictionary(g: int) -> CurveDictionary:
    """A deterministic dictionary of curves on N_g for generated examples.

    Handles of the cover are grouped into orbits ``{i, k+1-i}`` of ``J``.
    Curves are taken on one handle of each orbit (``a``, ``b``, ``a+b``,
    ``a-b``) and across neighbouring handles (``a_i+a_{i+1}``,
    ``b_i+b_{i+1}``); invalid and degenerate ones are dropped.  Curves
    supported on different orbits are declared disjoint.
    """
    d = CurveDictionary(g)
    k = d.k
    lat = d.lattice

    def orbit(i):
        return min(i, k + 1 - i)

    cands: list[_Candidate] = []
    for i in range(1, k + 1):
        if i > k + 1 - i:
            break
        cands += [
            _Candidate(f"a{i}", lat.vec(f"a{i}"), frozenset({orbit(i)})),
            _Candidate(f"b{i}", lat.vec(f"b{i}"), frozenset({orbit(i)})),
            _Candidate(f"p{i}", lat.vec(f"a{i}+b{i}"), frozenset({orbit(i)})),
            _Candidate(f"m{i}", lat.vec(f"a{i}-b{i}"), frozenset({orbit(i)})),
        ]
    for i in range(1, k):
        both = frozenset({orbit(i), orbit(i + 1)})
        cands += [
            _Candidate(f"aa{i}", lat.vec(f"a{i}+a{i + 1}"), both),
            _Candidate(f"bb{i}", lat.vec(f"b{i}+b{i + 1}"), both),
        ]
    kept: list[_Candidate] = []
    for c in cands:
        jg = d.J.apply(c.lift)
        if pairing(c.lift, jg) != 0 or canonical_sign(jg) == canonical_sign(c.lift):
            continue
        if d.lookup(c.lift) is not None:
            continue
        d.register(c.name, c.lift, note="standard")
        kept.append(c)
    for i, c in enumerate(kept):
        for e in kept[i + 1:]:
            if not (c.orbits & e.orbits):
                d.declare_disjoint(c.name, e.name)
    return d
