"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 invariant violation or illegal move,
4 unsupported hypothesis, 5 search inconclusive.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import formats
from .curves import PLUS, standard_dictionary
from .errors import InvariantError, NolfError, ParseError
from .invariants import summarize
from .lifting import AchiralWord, lift_word
from .search import (
    DISTINGUISHED,
    EQUIVALENT,
    SearchConfig,
    bfs_equivalent,
    default_conjugator_pool,
    lifted_move_chain,
    replay,
)
from .words import Letter, MoveKind, Word, apply_moves, normalize_positive

EXIT_INCONCLUSIVE = 5

MOVE_NAMES = {
    "insert": (MoveKind.INSERT_LEFT, MoveKind.INSERT_RIGHT),
    "insert-left": (MoveKind.INSERT_LEFT,),
    "insert-right": (MoveKind.INSERT_RIGHT,),
    "delete": (MoveKind.DELETE,),
    "commute": (MoveKind.COMMUTE,),
    "conj": (MoveKind.CONJUGATE,),
}


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", path) from None


def _significant(text: str) -> list[str]:
    return next((tok for _, tok in formats.directives(text)), [])


class Session:
    """Dictionary and words loaded for one command."""

    def __init__(self, dict_path: str | None):
        self.dictionary = None
        self.own_dictionary = False
        if dict_path:
            b = formats.parse_bundle(_read(dict_path), dict_path)
            self.dictionary = b.dictionary
        self._initial_size = len(self.dictionary) if self.dictionary else 0

    def load(self, path: str):
        text = _read(path)
        head = _significant(text)
        if head[:2] == ["surface", "O"]:
            return formats.parse_lifted(text, path, self.dictionary)
        if self.dictionary is not None and head[:1] == ["surface"]:
            b = formats.parse_bundle(text, path)
            if formats.format_dictionary(b.dictionary) != formats.format_dictionary(self.dictionary):
                raise InvariantError(f"{path}: word uses a different dictionary")
            w = b.word
            return None if w is None else Word(self.dictionary, w.base, w.letters)
        b = formats.parse_bundle(text, path, self.dictionary)
        if self.dictionary is None:
            self.dictionary = b.dictionary
            self.own_dictionary = b.has_dictionary
            self._initial_size = len(b.dictionary)
        return b.word

    def load_word(self, path: str):
        w = self.load(path)
        if w is None:
            raise ParseError("file holds no word (missing 'base' line)", path)
        return w

    def format(self, w) -> str:
        if isinstance(w, AchiralWord):
            return formats.format_lifted(w)
        if self.own_dictionary or len(w.dictionary) != self._initial_size:
            return formats.format_bundle(w)
        return formats.format_word(w)


def _word_paths(args) -> list[str]:
    return list(args.word or []) + list(getattr(args, "files", None) or [])


def cmd_validate(args) -> int:
    paths = list(args.paths)
    if not paths:
        raise ParseError("nothing to validate")
    for p in paths:
        text = _read(p)
        head = _significant(text)
        if head and head[0] in ("start", "insert", "delete", "commute", "flip", "conj"):
            formats.parse_moves(text, p)
            kind = "moves"
        elif head and head[0].lstrip("-").isdigit():
            formats.parse_matrix(text, p)
            kind = "matrix"
        else:
            s = Session(args.dict)
            w = s.load(p)
            kind = "lifted" if isinstance(w, AchiralWord) else ("bundle" if w is not None else "dictionary")
        print(f"ok {p} {kind}")
    return 0


def cmd_lift(args) -> int:
    s = Session(args.dict)
    (path,) = _one(args)
    w = s.load_word(path)
    if isinstance(w, AchiralWord):
        raise InvariantError(f"{path}: already a lifted word")
    sys.stdout.write(formats.format_lifted(lift_word(w)))
    return 0


def cmd_invariants(args) -> int:
    s = Session(args.dict)
    (path,) = _one(args)
    sys.stdout.write(summarize(s.load_word(path)).format())
    return 0


def cmd_normalize(args) -> int:
    s = Session(args.dict)
    (path,) = _one(args)
    w = s.load_word(path)
    sys.stdout.write(s.format(normalize_positive(w)))
    return 0


def cmd_apply(args) -> int:
    s = Session(args.dict)
    (path,) = _one(args)
    w = s.load_word(path)
    moves, _, _ = formats.parse_moves(_read(args.script), args.script, rank=w.rank)
    sys.stdout.write(s.format(apply_moves(w, moves)))
    return 0


def _config(args, w) -> SearchConfig:
    kinds: set = set()
    for name in args.moves.split(","):
        name = name.strip()
        if name not in MOVE_NAMES:
            raise ParseError(f"unknown move kind {name!r}; choose from {', '.join(MOVE_NAMES)}")
        kinds.update(MOVE_NAMES[name])
    pool = [formats.parse_matrix(_read(p), p) for p in args.conj_matrix or []]
    if args.default_pool:
        if isinstance(w, AchiralWord) and w.dictionary is None:
            raise InvariantError("--default-pool on a lifted word needs --dict")
        pool += default_conjugator_pool(w.dictionary, args.default_pool)
    return SearchConfig(
        max_depth=args.depth,
        max_insert_letters=args.max_insert,
        allowed_moves=frozenset(kinds),
        conjugator_pool=tuple(pool),
        node_budget=args.budget,
        strict_positions=args.strict_positions,
    )


def cmd_search(args) -> int:
    s = Session(args.dict)
    paths = _word_paths(args)
    if len(paths) != 2:
        raise ParseError(f"search needs exactly two words, got {len(paths)}")
    w1, w2 = (s.load_word(p) for p in paths)
    out = bfs_equivalent(w1, w2, _config(args, w1))
    print(f"# verdict={out.verdict}")
    if out.verdict == DISTINGUISHED:
        wit = out.witness
        print(f"# invariant={wit.name}")
        print(f"# left={_value(wit.left)}")
        print(f"# right={_value(wit.right)}")
        return 0
    print(f"# visited={out.visited} expanded={out.expanded}")
    if out.verdict == EQUIVALENT:
        print(f"# moves={len(out.certificate)}")
        sys.stdout.write(formats.format_certificate(out.certificate))
        return 0
    return EXIT_INCONCLUSIVE


def _value(v) -> str:
    if isinstance(v, tuple):
        return ",".join(map(str, v))
    return str(v).lower() if isinstance(v, bool) else str(v)


def cmd_replay(args) -> int:
    s = Session(args.dict)
    (path,) = _one(args)
    w = s.load_word(path)
    cert = formats.parse_certificate(_read(args.cert), args.cert, rank=w.rank)
    sys.stdout.write(s.format(replay(cert, w)))
    return 0


def cmd_chain(args) -> int:
    s = Session(args.dict)
    (path,) = _one(args)
    w = s.load_word(path)
    lw = w if isinstance(w, AchiralWord) else lift_word(w)
    matrix = formats.parse_matrix(_read(args.conj_matrix), args.conj_matrix) if args.conj_matrix else None
    cert = lifted_move_chain(lw, args.index, args.move, matrix)
    sys.stdout.write(formats.format_certificate(cert))
    return 0


def cmd_gen(args) -> int:
    if args.length < 0:
        raise InvariantError("length must be non-negative")
    d = standard_dictionary(args.genus)
    if not len(d) and args.length:
        raise InvariantError(f"no standard curves on N_{args.genus}")
    rng = random.Random(args.seed)
    ids = [c.id for c in d]
    letters = [(rng.choice(ids), rng.choice((PLUS, -PLUS))) for _ in range(args.length)]
    w = Word(d, args.base, tuple(Letter(c, t, 1) for c, t in letters))
    sys.stdout.write(formats.format_bundle(w))
    return 0


def _one(args) -> list[str]:
    paths = _word_paths(args)
    if len(paths) != 1:
        raise ParseError(f"expected exactly one word file, got {len(paths)}")
    return paths


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nolf", description="Dehn twist factorizations on non-orientable fibers and their lifts.")
    sub = p.add_subparsers(dest="command", required=True)

    def word_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--dict", help="bundle file holding the curve dictionary")
        sp.add_argument("--word", action="append", help="word file (repeatable)")
        sp.add_argument("files", nargs="*", help="word files")
        sp.set_defaults(fn=fn)
        return sp

    sp = sub.add_parser("validate", help="parse files and check every invariant")
    sp.add_argument("--dict")
    sp.add_argument("paths", nargs="*")
    sp.set_defaults(fn=cmd_validate)

    word_cmd("lift", cmd_lift, "print the lifted word on the orientation cover")
    word_cmd("invariants", cmd_invariants, "print the key=value invariant summary")
    word_cmd("normalize", cmd_normalize, "flip every negative letter to a positive one")

    sp = word_cmd("apply", cmd_apply, "apply a move script")
    sp.add_argument("--script", required=True)

    sp = word_cmd("search", cmd_search, "search for a move certificate between two words")
    sp.add_argument("--depth", type=int, default=4)
    sp.add_argument("--budget", type=int, default=100_000)
    sp.add_argument("--moves", default="insert,delete,commute,conj")
    sp.add_argument("--strict-positions", action="store_true")
    sp.add_argument("--max-insert", type=int, default=4)
    sp.add_argument("--conj-matrix", action="append", help="matrix file for the conjugator pool (repeatable)")
    sp.add_argument("--default-pool", type=int, default=0, metavar="N", help="add N lift matrices of dictionary twists")
    sp.add_argument("--seed", type=int, default=0, help="accepted for uniformity; the search is deterministic")

    sp = word_cmd("replay", cmd_replay, "replay a certificate and print the end word")
    sp.add_argument("--cert", required=True)

    sp = word_cmd("chain", cmd_chain, "print the lift-level certificate for one move of a positive word")
    sp.add_argument("--index", type=int, default=0)
    sp.add_argument("--move", choices=("i-1", "i-2", "ii"), default="i-1")
    sp.add_argument("--conj-matrix")

    sp = sub.add_parser("gen", help="seeded random positive word over the standard dictionary")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-g", "--genus", type=int, required=True)
    sp.add_argument("-n", "--length", type=int, required=True)
    sp.add_argument("--base", choices=("D2", "S2"), default="D2")
    sp.set_defaults(fn=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except NolfError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
