"""Numerical invariants of a factorization.

Euler characteristics follow the fibration count
``chi(X) = chi(fiber) chi(base) + n`` with ``chi(N_g) = 2 - g``; the
orientation cover doubles it and has twice as many critical points.
``n`` is taken from the freely reduced word so that it does not change
under pair insertion/deletion; the raw letter count is reported too.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantError
from .homology import IntMatrix
from .words import free_reduce

BASE_EULER = {"D2": 1, "S2": 2}


def _chi_base(base: str) -> int:
    try:
        return BASE_EULER[base]
    except KeyError:
        raise InvariantError(f"unknown base {base!r}") from None


def euler_characteristic(g: int, base: str, n: int) -> int:
    """chi of the total space of a genus-g non-orientable fibration with n critical points."""
    if g < 1 or n < 0:
        raise InvariantError(f"need g >= 1 and n >= 0, got g={g}, n={n}")
    return (2 - g) * _chi_base(base) + n


def cover_genus_from_euler(g: int, base: str, n: int) -> int:
    """Solve ``chi(Sigma_k) chi(base) + 2n = 2 chi(X)`` for the cover's fiber genus k."""
    chi_b = _chi_base(base)
    if chi_b == 0:
        raise InvariantError("base with vanishing Euler characteristic")
    chi_cover = 2 * euler_characteristic(g, base, n)
    rest = chi_cover - 2 * n
    if rest % chi_b:
        raise InvariantError("Euler characteristics are inconsistent")
    chi_fiber = rest // chi_b
    if chi_fiber % 2:
        raise InvariantError(f"cover fiber Euler characteristic {chi_fiber} is odd")
    return (2 - chi_fiber) // 2


def s2_closure_check(w) -> bool:
    """Homology-level necessary condition for a factorization over S^2: total monodromy is 1."""
    if w.base != "S2":
        raise InvariantError(f"closure check needs base S2, word has base {w.base}")
    return w.monodromy().is_identity()


@dataclass(frozen=True)
class FibrationSummary:
    fiber: str
    orientable: bool
    genus: int
    base: str
    raw_letters: int
    n: int
    chi_total: int
    chi_cover: int | None
    cover_genus: int | None
    positive: int
    negative: int
    trace: int
    char_poly: tuple[int, ...]
    s2_closure: bool | None
    total_monodromy: IntMatrix

    def as_pairs(self) -> list[tuple[str, str]]:
        def b(x):
            return "none" if x is None else str(x).lower()

        return [
            ("fiber", self.fiber),
            ("orientable", b(self.orientable)),
            ("genus", str(self.genus)),
            ("base", self.base),
            ("letters", str(self.raw_letters)),
            ("n", str(self.n)),
            ("positive", str(self.positive)),
            ("negative", str(self.negative)),
            ("chi_total", str(self.chi_total)),
            ("chi_cover", b(self.chi_cover)),
            ("cover_genus", b(self.cover_genus)),
            ("trace", str(self.trace)),
            ("char_poly", ",".join(map(str, self.char_poly))),
            ("s2_closure", b(self.s2_closure)),
            ("monodromy", ";".join(" ".join(map(str, r)) for r in self.total_monodromy.rows)),
            ("relatively_minimal", "assumed"),
        ]

    def format(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in self.as_pairs())


def parse_summary(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        k, _, v = line.partition("=")
        out[k] = v
    return out


def summarize(w) -> FibrationSummary:
    reduced, _ = free_reduce(w)
    n = len(reduced.letters)
    m = w.monodromy()
    closure = s2_closure_check(w) if w.base == "S2" else None
    pos = sum(l.exponent == 1 for l in w.letters)
    neg = len(w.letters) - pos
    if w.orientable:
        chi = (2 - 2 * w.k) * _chi_base(w.base) + n
        return FibrationSummary(
            f"O{w.k}", True, w.k, w.base, len(w.letters), n, chi, None, None,
            pos, neg, m.trace, m.charpoly(), closure, m,
        )
    g = w.g
    chi = euler_characteristic(g, w.base, n)
    k = cover_genus_from_euler(g, w.base, n)
    if k != g - 1:
        raise InvariantError(f"cover genus {k} != g - 1 = {g - 1}")
    return FibrationSummary(
        f"N{g}", False, g, w.base, len(w.letters), n, chi, 2 * chi, k,
        pos, neg, m.trace, m.charpoly(), closure, m,
    )
