"""Equivalence search, certificate replay and the scripted lift-level chains.

The search runs on canonical letter keys rather than on words: a node is
the tuple of keys of a word, so theta flips and curve aliases collapse
into one node.  Certificates are rebuilt on real words afterwards and
replayed before an ``Equivalent`` verdict is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    HashMismatchError,
    IllegalMoveError,
    InvariantError,
)
from .homology import IntMatrix, twist_pair_matrix
from .lifting import AchiralWord, is_pair_lift, lift_word
from .words import (
    Move,
    MoveCertificate,
    MoveKind,
    Word,
    apply_move,
    apply_moves,
    conjugate_all,
    insert_after_next,
    insert_before_current,
    word_hash,
)

EQUIVALENT = "Equivalent"
DISTINGUISHED = "Distinguished"
INCONCLUSIVE = "Inconclusive"

SEARCH_KINDS = frozenset(
    {MoveKind.INSERT_LEFT, MoveKind.INSERT_RIGHT, MoveKind.DELETE, MoveKind.COMMUTE, MoveKind.CONJUGATE}
)


@dataclass(frozen=True)
class SearchConfig:
    max_depth: int = 4
    max_insert_letters: int = 4
    allowed_moves: frozenset = SEARCH_KINDS
    conjugator_pool: tuple[IntMatrix, ...] = ()
    node_budget: int = 100_000
    strict_positions: bool = False

    def __post_init__(self):
        if self.max_depth < 0 or self.max_insert_letters < 0 or self.node_budget <= 0:
            raise InvariantError("search budgets must be positive")
        kinds = frozenset(MoveKind(k) for k in self.allowed_moves)
        object.__setattr__(self, "allowed_moves", kinds)
        object.__setattr__(self, "conjugator_pool", tuple(self.conjugator_pool))


@dataclass(frozen=True)
class Witness:
    name: str
    left: object
    right: object


@dataclass(frozen=True)
class SearchOutcome:
    verdict: str
    certificate: MoveCertificate | None = None
    witness: Witness | None = None
    visited: int = 0
    expanded: int = 0


# -- invariants -------------------------------------------------------------


def quick_distinguish(w1, w2) -> Witness | None:
    """First differing move-invariant, or None when all agree."""
    if w1.fiber != w2.fiber:
        return Witness("fiber", w1.fiber, w2.fiber)
    if w1.base != w2.base:
        return Witness("base", w1.base, w2.base)
    m1, m2 = w1.monodromy(), w2.monodromy()
    c1, c2 = m1.charpoly(), m2.charpoly()
    if c1 != c2:
        return Witness("char_poly", c1, c2)
    if w1.base == "S2":
        s1, s2 = m1.is_identity(), m2.is_identity()
        if s1 != s2:
            return Witness("s2_closure", s1, s2)
    if m1.trace != m2.trace:
        return Witness("trace", m1.trace, m2.trace)
    return None


def default_conjugator_pool(dictionary, size: int = 5) -> tuple[IntMatrix, ...]:
    """Lift matrices of twists about dictionary curves, each followed by its inverse."""
    pool: list[IntMatrix] = []
    for c in dictionary:
        if len(pool) >= size:
            break
        if c.is_null or dictionary.is_degenerate(c.id):
            continue
        s, s_bar = dictionary.lift_pair(dictionary.oriented(c.id))
        pool.append(twist_pair_matrix(s, s_bar, 1))
        if len(pool) < size:
            pool.append(twist_pair_matrix(s, s_bar, -1))
    return tuple(pool)


# -- replay -------------------------------------------------------------------


def replay(cert: MoveCertificate, w_start):
    if word_hash(w_start) != cert.start:
        raise HashMismatchError(f"start hash {cert.start} does not match word hash {word_hash(w_start)}")
    w = apply_moves(w_start, cert.moves)
    if cert.end and word_hash(w) != cert.end:
        raise HashMismatchError(f"end hash {cert.end} does not match replayed word hash {word_hash(w)}")
    return w


def _inverse_moves(w_start, moves: Sequence[Move]) -> list[Move]:
    """Moves taking ``apply_moves(w_start, moves)`` back to ``w_start`` exactly."""
    states = [w_start]
    for mv in moves:
        states.append(apply_move(states[-1], mv))
    out: list[Move] = []
    for before, mv in zip(reversed(states[:-1]), reversed(moves)):
        k = mv.kind
        if k in (MoveKind.INSERT_LEFT, MoveKind.INSERT_RIGHT):
            out.append(Move(MoveKind.DELETE, mv.position))
        elif k is MoveKind.DELETE:
            y, z = before.letters[mv.position], before.letters[mv.position + 1]
            out.append(Move(MoveKind.INSERT_RIGHT, mv.position, y))
            if z != y.inverse():
                out.append(Move(MoveKind.FLIP, mv.position + 1))
        elif k is MoveKind.CONJUGATE:
            out.append(Move(MoveKind.CONJUGATE, matrix=mv.matrix.inverse()))
            # conjugation renames curves; restore the original letters' orientation data
            back = apply_move(apply_move(before, mv), out[-1])
            out.extend(_flip_fixups(back, before))
        else:
            out.append(mv)
    return out


def invert_certificate(cert: MoveCertificate, w_start) -> MoveCertificate:
    moves = _inverse_moves(w_start, cert.moves)
    end = apply_moves(w_start, cert.moves)
    return MoveCertificate(word_hash(end), tuple(moves), cert.start)


def _flip_fixups(w, target) -> list[Move]:
    if w.orientable:
        return []
    return [
        Move(MoveKind.FLIP, i)
        for i, (x, y) in enumerate(zip(w.letters, target.letters))
        if x != y and x.flipped() == y
    ]


# -- search -------------------------------------------------------------------


class _KeySpace:
    """Key-level view of a word type: inverses, commuting and conjugation."""

    def __init__(self, proto, pool: Sequence[IntMatrix]):
        self.w = proto
        self.pool = list(pool)
        self._conj: dict[tuple, tuple] = {}
        self._comm: dict[tuple, bool] = {}

    @staticmethod
    def inv(key):
        return (key[0], -key[1])

    def commute(self, k1, k2) -> bool:
        pair = (k1[0], k2[0])
        r = self._comm.get(pair)
        if r is None:
            r = self._comm[pair] = self.w.keys_commute(k1, k2)
        return r

    def conj(self, key, mi: int):
        ck = (key, mi)
        r = self._conj.get(ck)
        if r is None:
            l = self.w.letter_from_key(key)
            r = self._conj[ck] = self.w.letter_key(self.w.push_letter(self.pool[mi], l))
        return r


def _successors(node, ks: _KeySpace, cfg: SearchConfig, alphabet, ins_left: bool):
    """Yield (key-move, child, is_insert) in a fixed order."""
    n = len(node)
    allowed = cfg.allowed_moves
    inv = ks.inv
    if MoveKind.DELETE in allowed:
        for p in range(n - 1):
            a, b = node[p], node[p + 1]
            if a[0] == b[0] and a[1] == -b[1]:
                yield ("del", p), node[:p] + node[p + 2:], False
    if MoveKind.COMMUTE in allowed:
        for p in range(n - 1):
            a, b = node[p], node[p + 1]
            if a != b and ks.commute(a, b):
                yield ("com", p), node[:p] + (b, a) + node[p + 2:], False
    if ins_left is not None:
        if cfg.strict_positions:
            for i in range(n - 1):
                x = node[i]
                p = i + 2
                yield ("ins", p, x, "left"), node[:p] + (inv(x), x) + node[p:], True
                y = node[i + 1]
                yield ("ins", i, y, "right"), node[:i] + (y, inv(y)) + node[i:], True
        else:
            order = "left" if ins_left else "right"
            for p in range(n + 1):
                for x in alphabet:
                    pair = (inv(x), x) if ins_left else (x, inv(x))
                    yield ("ins", p, x, order), node[:p] + pair + node[p:], True
    if MoveKind.CONJUGATE in allowed:
        for mi in range(len(ks.pool)):
            yield ("conj", mi), tuple(ks.conj(k, mi) for k in node), False


def _to_move(w, km, pool, inverse_pool) -> Move:
    tag = km[0]
    if tag == "del":
        return Move(MoveKind.DELETE, km[1])
    if tag == "com":
        return Move(MoveKind.COMMUTE, km[1])
    if tag == "ins":
        kind = MoveKind.INSERT_LEFT if km[3] == "left" else MoveKind.INSERT_RIGHT
        return Move(kind, km[1], w.letter_from_key(km[2]))
    mi = km[1]
    return Move(MoveKind.CONJUGATE, matrix=inverse_pool[mi] if len(km) > 2 else pool[mi])


def _inverse_key_move(km, before):
    """Key-level inverse of ``km`` applied to node ``before``."""
    tag = km[0]
    if tag == "ins":
        return ("del", km[1])
    if tag == "del":
        return ("ins", km[1], before[km[1]], "right")
    if tag == "com":
        return km
    return ("conj", km[1], "inv")


def bfs_equivalent(w1, w2, cfg: SearchConfig | None = None) -> SearchOutcome:
    """Bidirectional breadth-first search for a move certificate from w1 to w2.

    Each round expands one full level on the side with the smaller
    frontier (forward on ties).  When a level produces meeting nodes, the
    one with the shortest total path and least key is used, so the result
    does not depend on expansion order.
    """
    cfg = cfg or SearchConfig()
    wit = quick_distinguish(w1, w2)
    if wit is not None:
        return SearchOutcome(DISTINGUISHED, witness=wit)
    for m in cfg.conjugator_pool:
        w1.check_conjugator(m)
    pool = list(cfg.conjugator_pool)
    inverse_pool = [m.inverse() for m in pool]
    ks = _KeySpace(w1, pool)

    start = w1.key()[2]
    goal = w2.key()[2]
    alphabet = sorted({k for k in start + goal} | {ks.inv(k) for k in start + goal})
    ins_ok = MoveKind.INSERT_LEFT in cfg.allowed_moves or MoveKind.INSERT_RIGHT in cfg.allowed_moves
    ins_left = (MoveKind.INSERT_LEFT in cfg.allowed_moves) if ins_ok else None
    if cfg.strict_positions and not ins_ok:
        ins_left = None

    # node -> (parent, key move, depth, inserts used)
    sides = [{start: (None, None, 0, 0)}, {goal: (None, None, 0, 0)}]
    frontiers = [[start], [goal]]
    depths = [0, 0]
    visited = 2 if start != goal else 1
    expanded = 0
    meets: list = [start] if start == goal else []

    while not meets and depths[0] + depths[1] < cfg.max_depth:
        if not frontiers[0] and not frontiers[1]:
            break
        # an exhausted side may still be reached by the other one
        side = 0 if frontiers[0] and (len(frontiers[0]) <= len(frontiers[1]) or not frontiers[1]) else 1
        seen, other = sides[side], sides[1 - side]
        nxt = []
        for node in frontiers[side]:
            expanded += 1
            _, _, d, used = seen[node]
            can_ins = ins_left if used < cfg.max_insert_letters else None
            for km, child, is_ins in _successors(node, ks, cfg, alphabet, can_ins):
                if child in seen:
                    continue
                visited += 1
                if visited > cfg.node_budget:
                    return SearchOutcome(INCONCLUSIVE, visited=visited - 1, expanded=expanded)
                seen[child] = (node, km, d + 1, used + is_ins)
                nxt.append(child)
                if child in other:
                    meets.append(child)
        depths[side] += 1
        nxt.sort(key=lambda t: (len(t), t))
        frontiers[side] = nxt

    if not meets:
        return SearchOutcome(INCONCLUSIVE, visited=visited, expanded=expanded)
    meet = min(meets, key=lambda t: (sides[0][t][2] + sides[1][t][2], len(t), t))

    fwd = _path(sides[0], meet)
    bwd = _path(sides[1], meet)
    key_moves = [km for km, _ in fwd]
    for km, before in reversed(bwd):
        key_moves.append(_inverse_key_move(km, before))

    w = w1
    moves: list[Move] = []
    for km in key_moves:
        mv = _to_move(w, km, pool, inverse_pool)
        w = apply_move(w, mv)
        moves.append(mv)
    fix = _flip_fixups(w, w2)
    moves.extend(fix)
    cert = MoveCertificate(word_hash(w1), tuple(moves), word_hash(w2))
    end = replay(cert, w1)
    if end.key() != w2.key():
        raise InvariantError("internal error: certificate does not reach the target word")
    return SearchOutcome(EQUIVALENT, certificate=cert, visited=visited, expanded=expanded)


def _path(seen: dict, node) -> list:
    """[(key move, node before move)] from the root to ``node``."""
    out = []
    while True:
        parent, km, _, _ = seen[node]
        if parent is None:
            break
        out.append((km, parent))
        node = parent
    out.reverse()
    return out


# -- lift-level chains ----------------------------------------------------------


def _check_chain_input(lw: AchiralWord, i: int) -> None:
    if not isinstance(lw, AchiralWord) or not is_pair_lift(lw):
        raise InvariantError("chain input must be the lift of a word (pairs t_s t_Js^-1)")
    n = len(lw.letters) // 2
    if n < 2:
        raise IllegalMoveError(f"word of length {n} is too short; need at least 2 letters")
    if not 0 <= i <= n - 2:
        raise IllegalMoveError(f"index {i} out of range for a word of length {n}")


def proof_chain_i1(lw: AchiralWord, i: int) -> list[Move]:
    """Lift-level moves realizing the insertion after letter i+1 (0-based i)."""
    _check_chain_input(lw, i)
    p = 2 * i
    a, b = lw.letters[p], lw.letters[p + 1]
    C, L, R, D = MoveKind.COMMUTE, MoveKind.INSERT_LEFT, MoveKind.INSERT_RIGHT, MoveKind.DELETE
    return [
        Move(C, p),
        Move(L, p + 3, a),
        Move(L, p + 6, a),
        Move(D, p + 3),
        Move(C, p),
        Move(R, p + 3, b.inverse()),
        Move(R, p + 6, b.inverse()),
        Move(D, p + 3),
        Move(C, p + 5),
        Move(C, p + 6),
    ]


def proof_chain_i2(lw: AchiralWord, i: int) -> list[Move]:
    """Lift-level moves realizing the insertion before letter i (0-based i)."""
    _check_chain_input(lw, i)
    p = 2 * i
    c, d = lw.letters[p + 2], lw.letters[p + 3]
    C, L, R, D = MoveKind.COMMUTE, MoveKind.INSERT_LEFT, MoveKind.INSERT_RIGHT, MoveKind.DELETE
    return [
        Move(C, p + 2),
        Move(R, p + 1, c),
        Move(R, p, c),
        Move(D, p + 3),
        Move(C, p + 4),
        Move(L, p + 3, d.inverse()),
        Move(L, p + 2, d.inverse()),
        Move(D, p + 5),
        Move(C, p + 1),
        Move(C, p + 2),
    ]


def proof_chain_ii(lw: AchiralWord, m: IntMatrix) -> list[Move]:
    lw.check_conjugator(m)
    return [Move(MoveKind.CONJUGATE, matrix=m)]


def lifted_move_chain(lw: AchiralWord, i: int = 0, move: str = "i-1", matrix: IntMatrix | None = None) -> MoveCertificate:
    """Certificate on the cover for one move of a positive word on N_g.

    ``move`` is ``"i-1"`` (pair inserted after letter i+1), ``"i-2"`` (pair
    inserted before letter i) or ``"ii"`` (simultaneous conjugation by
    ``matrix``).  The end word equals the lift of the moved word.
    """
    if move == "i-1":
        moves = proof_chain_i1(lw, i)
    elif move == "i-2":
        moves = proof_chain_i2(lw, i)
    elif move == "ii":
        if matrix is None:
            raise InvariantError("conjugation chain needs a matrix")
        moves = proof_chain_ii(lw, matrix)
    else:
        raise InvariantError(f"unknown move {move!r}; expected i-1, i-2 or ii")
    end = apply_moves(lw, moves)
    return MoveCertificate(word_hash(lw), tuple(moves), word_hash(end))


def chain_target(w: Word, i: int = 0, move: str = "i-1", matrix: IntMatrix | None = None) -> AchiralWord:
    """Lift of the N_g word after applying ``move``: what the chain must reach."""
    if move == "i-1":
        return lift_word(insert_after_next(w, i))
    if move == "i-2":
        return lift_word(insert_before_current(w, i))
    if move == "ii":
        return lift_word(conjugate_all(w, matrix))
    raise InvariantError(f"unknown move {move!r}")
