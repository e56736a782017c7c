"""Line-oriented text formats.

Bundle (dictionary and/or word)::

    surface N <g>
    curve <id> lift <2k ints>
    curve <id> null <tag>
    disjoint <id> <id>
    base D2|S2
    positive
    letter <id> <+|-> <+1|-1>

Lifted word::

    surface O <k>
    base D2|S2
    letter lift <2k ints> <+1|-1>
    letter null <tag> <sheet> <+1|-1>

Matrices are whitespace-separated integer rows.  Move scripts hold one
move per line (``insert``, ``delete``, ``commute``, ``flip``, ``conj``);
certificates add ``start <hash>`` and ``end <hash>`` lines.  ``#`` starts
a comment everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .curves import MINUS, PLUS, CurveDictionary
from .errors import InvariantError, ParseError
from .homology import IntMatrix
from .lifting import AchiralWord, CoverLetter
from .words import BASES, Letter, Move, MoveCertificate, MoveKind, Word

RESERVED_IDS = {"lift", "null", "inline"}


def directives(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line.split()


def _int(tok: str, path, n) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", path, n) from None


def _sign(tok: str, path, n, what: str) -> int:
    if tok in ("+", "+1", "1"):
        return PLUS
    if tok in ("-", "-1"):
        return MINUS
    raise ParseError(f"bad {what} {tok!r}; expected + or -", path, n)


def _locate(e: InvariantError, path, n) -> None:
    where = f"{path}:{n}:" if path is not None else f"line {n}:"
    e.args = (f"{where} {e}",)


@dataclass
class Bundle:
    dictionary: CurveDictionary
    word: Word | None
    has_dictionary: bool
    positive_flag: bool = False


def parse_bundle(text: str, path=None, dictionary: CurveDictionary | None = None) -> Bundle:
    d = dictionary
    own = False
    base = None
    positive = False
    letters: list[tuple[int, Letter]] = []
    for n, tok in directives(text):
        head, args = tok[0], tok[1:]
        try:
            if head == "surface":
                if len(args) != 2 or args[0] != "N":
                    raise ParseError("expected 'surface N <g>'", path, n)
                if d is not None:
                    raise ParseError("surface declared twice (file and --dict)", path, n)
                d = CurveDictionary(_int(args[1], path, n))
                own = True
            elif head == "curve":
                if d is None:
                    raise ParseError("curve before surface line", path, n)
                if len(args) < 3 or args[1] not in ("lift", "null"):
                    raise ParseError("expected 'curve <id> lift <ints>' or 'curve <id> null <tag>'", path, n)
                cid = args[0]
                if cid in RESERVED_IDS:
                    raise ParseError(f"curve id {cid!r} is reserved", path, n)
                if args[1] == "null":
                    if len(args) != 3:
                        raise ParseError("expected 'curve <id> null <tag>'", path, n)
                    d.register(cid, d.lattice.zero(), tag=args[2])
                else:
                    vec = [_int(t, path, n) for t in args[2:]]
                    d.register(cid, vec)
            elif head == "disjoint":
                if d is None:
                    raise ParseError("disjoint before surface line", path, n)
                if len(args) != 2:
                    raise ParseError("expected 'disjoint <id> <id>'", path, n)
                d.declare_disjoint(args[0], args[1])
            elif head == "base":
                if len(args) != 1 or args[0] not in BASES:
                    raise ParseError(f"expected 'base D2' or 'base S2', got {' '.join(tok)!r}", path, n)
                if base is not None:
                    raise ParseError("base declared twice", path, n)
                base = args[0]
            elif head == "positive":
                if args:
                    raise ParseError("'positive' takes no arguments", path, n)
                positive = True
            elif head == "letter":
                if len(args) not in (2, 3):
                    raise ParseError("expected 'letter <id> <+|-> <+1|-1>'", path, n)
                theta = _sign(args[1], path, n, "theta")
                exp = _sign(args[2], path, n, "exponent") if len(args) == 3 else PLUS
                letters.append((n, Letter(args[0], theta, exp)))
            else:
                raise ParseError(f"unknown directive {head!r}", path, n)
        except InvariantError as e:
            _locate(e, path, n)
            raise
    if d is None:
        raise ParseError("no surface line and no dictionary given", path)
    word = None
    if base is not None:
        for n, l in letters:
            try:
                Word(d, base, (l,))
            except InvariantError as e:
                _locate(e, path, n)
                raise
        word = Word(d, base, tuple(l for _, l in letters))
        if positive and not word.is_positive:
            raise InvariantError(f"{path}: word marked positive has a negative exponent")
    elif letters:
        raise ParseError("letters without a base line", path, letters[0][0])
    return Bundle(d, word, own, positive)


def parse_lifted(text: str, path=None, dictionary: CurveDictionary | None = None) -> AchiralWord:
    k = None
    base = None
    letters = []
    for n, tok in directives(text):
        head, args = tok[0], tok[1:]
        try:
            if head == "surface":
                if len(args) != 2 or args[0] != "O":
                    raise ParseError("expected 'surface O <k>'", path, n)
                k = _int(args[1], path, n)
            elif head == "base":
                if len(args) != 1 or args[0] not in BASES:
                    raise ParseError("expected 'base D2' or 'base S2'", path, n)
                base = args[0]
            elif head == "letter":
                if k is None:
                    raise ParseError("letter before surface line", path, n)
                letters.append(_cover_letter(args, k, path, n))
            else:
                raise ParseError(f"unknown directive {head!r}", path, n)
        except InvariantError as e:
            _locate(e, path, n)
            raise
    if k is None or base is None:
        raise ParseError("lifted word needs 'surface O <k>' and 'base' lines", path)
    if dictionary is not None and dictionary.k != k:
        dictionary = None
    return AchiralWord(k, base, tuple(letters), dictionary)


def _cover_letter(args, k, path, n) -> CoverLetter:
    if not args:
        raise ParseError("empty letter", path, n)
    if args[0] == "lift":
        if len(args) != 2 * k + 2:
            raise ParseError(f"expected 'lift <{2 * k} ints> <+1|-1>'", path, n)
        vec = [_int(t, path, n) for t in args[1:-1]]
        return CoverLetter(vec, _sign(args[-1], path, n, "exponent"))
    if args[0] == "null":
        if len(args) != 4:
            raise ParseError("expected 'null <tag> <sheet> <+1|-1>'", path, n)
        sheet = _int(args[2], path, n)
        if sheet not in (0, 1):
            raise ParseError("sheet must be 0 or 1", path, n)
        return CoverLetter((0,) * (2 * k), _sign(args[3], path, n, "exponent"), args[1], sheet)
    raise ParseError(f"expected 'lift' or 'null', got {args[0]!r}", path, n)


def parse_matrix(text: str, path=None) -> IntMatrix:
    rows = [[_int(t, path, n) for t in tok] for n, tok in directives(text)]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ParseError("matrix must be square and non-empty", path)
    return IntMatrix.from_rows(rows)


def _inline_matrix(toks, path, n) -> IntMatrix:
    vals = [_int(t, path, n) for t in toks]
    size = round(len(vals) ** 0.5)
    if not vals or size * size != len(vals):
        raise ParseError(f"inline matrix needs a square number of entries, got {len(vals)}", path, n)
    return IntMatrix.from_rows([vals[i * size:(i + 1) * size] for i in range(size)])


def _position(tok, path, n) -> int:
    p = _int(tok, path, n)
    if p < 0:
        raise ParseError("negative position", path, n)
    return p


def parse_moves(text: str, path=None, *, rank: int | None = None) -> tuple[list[Move], str, str]:
    """Parse a move script or certificate; returns (moves, start hash, end hash)."""
    base_dir = Path(path).parent if path is not None else Path(".")
    moves: list[Move] = []
    start = end = ""
    for n, tok in directives(text):
        head, args = tok[0], tok[1:]
        if head in ("start", "end"):
            if len(args) != 1:
                raise ParseError(f"expected '{head} <hash>'", path, n)
            if head == "start":
                start = args[0]
            else:
                end = args[0]
        elif head in ("delete", "commute", "flip"):
            if len(args) != 1:
                raise ParseError(f"expected '{head} <pos>'", path, n)
            kind = {"delete": MoveKind.DELETE, "commute": MoveKind.COMMUTE, "flip": MoveKind.FLIP}[head]
            moves.append(Move(kind, _position(args[0], path, n)))
        elif head == "insert":
            if len(args) < 3 or args[-1] not in ("left", "right"):
                raise ParseError("expected 'insert <pos> <letter> <left|right>'", path, n)
            pos = _position(args[0], path, n)
            body = args[1:-1]
            try:
                if body[0] in ("lift", "null"):
                    k = rank // 2 if rank is not None else (len(body) - 2) // 2
                    letter = _cover_letter(body, k, path, n)
                else:
                    if len(body) not in (2, 3):
                        raise ParseError("expected '<id> <+|-> [<+1|-1>]'", path, n)
                    theta = _sign(body[1], path, n, "theta")
                    exp = _sign(body[2], path, n, "exponent") if len(body) == 3 else PLUS
                    letter = Letter(body[0], theta, exp)
            except InvariantError as e:
                _locate(e, path, n)
                raise
            kind = MoveKind.INSERT_LEFT if args[-1] == "left" else MoveKind.INSERT_RIGHT
            moves.append(Move(kind, pos, letter))
        elif head == "conj":
            if not args:
                raise ParseError("expected 'conj <matrix-file>' or 'conj inline <ints>'", path, n)
            if args[0] == "inline":
                m = _inline_matrix(args[1:], path, n)
            else:
                if len(args) != 1:
                    raise ParseError("expected 'conj <matrix-file>'", path, n)
                mpath = base_dir / args[0]
                try:
                    mtext = mpath.read_text()
                except OSError as e:
                    raise ParseError(f"cannot read matrix file: {e}", path, n) from None
                m = parse_matrix(mtext, str(mpath))
            moves.append(Move(MoveKind.CONJUGATE, matrix=m))
        else:
            raise ParseError(f"unknown move {head!r}", path, n)
    return moves, start, end


def parse_certificate(text: str, path=None, *, rank: int | None = None) -> MoveCertificate:
    moves, start, end = parse_moves(text, path, rank=rank)
    if not start:
        raise ParseError("certificate needs a 'start <hash>' line", path)
    return MoveCertificate(start, tuple(moves), end)


# -- output -------------------------------------------------------------------


def _ints(xs) -> str:
    return " ".join(map(str, xs))


def _pm(x: int) -> str:
    return "+" if x > 0 else "-"


def _exp(x: int) -> str:
    return f"{x:+d}"


def format_dictionary(d: CurveDictionary) -> str:
    out = [f"surface N {d.g}"]
    for c in d:
        if c.is_null:
            out.append(f"curve {c.id} null {c.tag}")
        else:
            out.append(f"curve {c.id} lift {_ints(c.lift)}")
    out += [f"disjoint {a} {b}" for a, b in d.declared]
    return "\n".join(out) + "\n"


def format_word(w: Word) -> str:
    out = [f"base {w.base}"]
    if w.is_positive:
        out.append("positive")
    out += [f"letter {l.curve} {_pm(l.theta)} {_exp(l.exponent)}" for l in w.letters]
    return "\n".join(out) + "\n"


def format_bundle(w: Word) -> str:
    return format_dictionary(w.dictionary) + format_word(w)


def _format_cover_letter(l: CoverLetter) -> str:
    if l.tag is not None:
        return f"null {l.tag} {l.sheet} {_exp(l.exponent)}"
    return f"lift {_ints(l.lift)} {_exp(l.exponent)}"


def format_lifted(aw: AchiralWord) -> str:
    out = [f"surface O {aw.k}", f"base {aw.base}"]
    out += [f"letter {_format_cover_letter(l)}" for l in aw.letters]
    return "\n".join(out) + "\n"


def format_matrix(m: IntMatrix) -> str:
    return "".join(_ints(r) + "\n" for r in m.rows)


def format_move(mv: Move) -> str:
    k = mv.kind
    if k in (MoveKind.INSERT_LEFT, MoveKind.INSERT_RIGHT):
        l = mv.letter
        if isinstance(l, CoverLetter):
            body = _format_cover_letter(l)
        else:
            body = f"{l.curve} {_pm(l.theta)} {_exp(l.exponent)}"
        return f"insert {mv.position} {body} {'left' if k is MoveKind.INSERT_LEFT else 'right'}"
    if k is MoveKind.CONJUGATE:
        return f"conj inline {_ints(mv.matrix.flat())}"
    name = {MoveKind.DELETE: "delete", MoveKind.COMMUTE: "commute", MoveKind.FLIP: "flip"}[k]
    return f"{name} {mv.position}"


def format_moves(moves) -> str:
    return "".join(format_move(m) + "\n" for m in moves)


def format_certificate(cert: MoveCertificate) -> str:
    out = f"start {cert.start}\n" + format_moves(cert.moves)
    if cert.end:
        out += f"end {cert.end}\n"
    return out
