"""Exact integer symplectic linear algebra on H_1 of a closed orientable surface.

Classes are plain tuples of Python ints (arbitrary precision, so nothing
can overflow).  The basis is ordered ``a_1, b_1, ..., a_k, b_k`` with
``<a_i, b_i> = +1``.

Conventions
-----------
* A right-handed twist about ``gamma`` acts as the transvection
  ``x -> x + <x, gamma> gamma``.
* Words are read left to right with ``[w] . [w'] = [w' o w]``, so the
  matrix of ``l_1 ... l_n`` is ``M(l_n) ... M(l_1)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    InvariantError,
    NotUnimodularError,
    ZeroClassError,
)

HClass = tuple  # tuple[int, ...] of length 2k


@dataclass(frozen=True)
class Lattice:
    """H_1(Sigma_k; Z) with its standard intersection form."""

    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("genus must be non-negative")

    @property
    def rank(self) -> int:
        return 2 * self.k

    @cached_property
    def labels(self) -> tuple[str, ...]:
        out = []
        for i in range(1, self.k + 1):
            out += [f"a{i}", f"b{i}"]
        return tuple(out)

    @cached_property
    def pairing_matrix(self) -> "IntMatrix":
        rows = [[0] * self.rank for _ in range(self.rank)]
        for i in range(self.k):
            rows[2 * i][2 * i + 1] = 1
            rows[2 * i + 1][2 * i] = -1
        return IntMatrix.from_rows(rows)

    def zero(self) -> HClass:
        return (0,) * self.rank

    def basis(self, label: str) -> HClass:
        v = [0] * self.rank
        v[self.labels.index(label)] = 1
        return tuple(v)

    def vec(self, spec: str | dict | Sequence[int]) -> HClass:
        """Build a class from ``"a1 - 2b2"``, ``{"a1": 1}`` or raw coefficients."""
        if isinstance(spec, str):
            coeffs: dict[str, int] = {}
            for sign, mult, label in re.findall(r"([+-]?)\s*(\d*)\s*([ab]\d+)", spec.replace(" ", "")):
                c = int(mult) if mult else 1
                coeffs[label] = coeffs.get(label, 0) + (-c if sign == "-" else c)
            spec = coeffs
        if isinstance(spec, dict):
            v = [0] * self.rank
            for label, c in spec.items():
                v[self.labels.index(label)] += c
            return tuple(v)
        v = tuple(int(c) for c in spec)
        self.check(v)
        return v

    def check(self, x: Sequence[int]) -> None:
        if len(x) != self.rank:
            raise DimensionMismatch(f"class of length {len(x)} in a lattice of rank {self.rank}")

    def format(self, x: HClass) -> str:
        terms = []
        for c, label in zip(x, self.labels):
            if c == 0:
                continue
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign}{mag}{label}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s[0] == "+" else s


def lattice_of(x: Sequence[int]) -> Lattice:
    if len(x) % 2:
        raise DimensionMismatch(f"odd-length class {tuple(x)}")
    return Lattice(len(x) // 2)


def pairing(x: Sequence[int], y: Sequence[int]) -> int:
    """Algebraic intersection number ``x^T Q y``."""
    if len(x) != len(y):
        raise DimensionMismatch(f"pairing of classes with lengths {len(x)} and {len(y)}")
    if len(x) % 2:
        raise DimensionMismatch("classes must have even length")
    total = 0
    for i in range(0, len(x), 2):
        total += x[i] * y[i + 1] - x[i + 1] * y[i]
    return total


def is_zero(x: Sequence[int]) -> bool:
    return not any(x)


def neg(x: Sequence[int]) -> HClass:
    return tuple(-c for c in x)


def canonical_sign(x: Sequence[int]) -> HClass:
    """The representative of ``{x, -x}`` whose first nonzero coefficient is positive."""
    for c in x:
        if c:
            return tuple(x) if c > 0 else neg(x)
    return tuple(x)


def is_primitive(x: Sequence[int]) -> bool:
    return math.gcd(*x) == 1 if x else False


@dataclass(frozen=True)
class IntMatrix:
    """Immutable square integer matrix."""

    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        rows = tuple(tuple(int(c) for c in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square")
        return cls(rows)

    @classmethod
    def from_columns(cls, cols: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls.from_rows(zip(*cols)) if cols else cls(())

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.rows]})"

    def column(self, j: int) -> HClass:
        return tuple(r[j] for r in self.rows)

    def apply(self, v: Sequence[int]) -> HClass:
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} for a {self.n}x{self.n} matrix")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if other.n != self.n:
                raise DimensionMismatch(f"{self.n}x{self.n} @ {other.n}x{other.n}")
            cols = list(zip(*other.rows))
            return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))
        return self.apply(other)

    def __neg__(self):
        return IntMatrix(tuple(tuple(-c for c in r) for r in self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows))) if self.rows else self

    @property
    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.n))

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.n)

    def det(self) -> int:
        """Bareiss fraction-free elimination."""
        n = self.n
        if n == 0:
            return 1
        a = [list(r) for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def inverse(self) -> "IntMatrix":
        """Exact inverse over Z; raises NotUnimodularError unless det = +-1."""
        n = self.n
        if self.det() not in (1, -1):
            raise NotUnimodularError("matrix is not invertible over the integers")
        a = [[Fraction(c) for c in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = next(i for i in range(col, n) if a[i][col] != 0)
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            a[col] = [c / p for c in a[col]]
            for i in range(n):
                if i != col and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        out = []
        for r in a:
            row = r[n:]
            if any(c.denominator != 1 for c in row):
                raise NotUnimodularError("inverse is not integral")
            out.append([int(c) for c in row])
        return IntMatrix.from_rows(out)

    def charpoly(self) -> tuple[int, ...]:
        """Characteristic polynomial ``det(xI - A)``, leading coefficient first.

        Faddeev-LeVerrier; every division is exact over Z.
        """
        n = self.n
        coeffs = [1]
        m = IntMatrix(tuple((0,) * n for _ in range(n)))
        for k in range(1, n + 1):
            am = self @ m
            c_prev = coeffs[-1]
            m = IntMatrix(tuple(tuple(am.rows[i][j] + (c_prev if i == j else 0) for j in range(n)) for i in range(n)))
            t = (self @ m).trace
            if t % k:
                raise InvariantError("non-integral Faddeev-LeVerrier step")
            coeffs.append(-t // k)
        return tuple(coeffs)

    def flat(self) -> tuple[int, ...]:
        return tuple(c for r in self.rows for c in r)


def gram(m: IntMatrix) -> IntMatrix:
    """``M^T Q M``: the pairing of the images of every basis pair."""
    if m.n % 2:
        raise DimensionMismatch("odd-dimensional matrix")
    q = Lattice(m.n // 2).pairing_matrix
    return m.transpose() @ q @ m


def is_symplectic(m: IntMatrix) -> bool:
    """<Mx, My> = <x, y> on every pair of basis vectors."""
    return gram(m) == Lattice(m.n // 2).pairing_matrix


def is_anti_symplectic(m: IntMatrix) -> bool:
    return gram(m) == -Lattice(m.n // 2).pairing_matrix


def transvection(gamma: Sequence[int], power: int = 1) -> IntMatrix:
    """Matrix of ``x -> x + power * <x, gamma> gamma``.

    ``power=-1`` gives the inverse twist.
    """
    gamma = tuple(gamma)
    lattice_of(gamma)
    if is_zero(gamma):
        raise ZeroClassError("transvection about the zero class")
    n = len(gamma)
    # row functional x -> <x, gamma>
    f = [0] * n
    for i in range(0, n, 2):
        f[i] = gamma[i + 1]
        f[i + 1] = -gamma[i]
    return IntMatrix(tuple(tuple(int(r == c) + power * gamma[r] * f[c] for c in range(n)) for r in range(n)))


def twist_left(m: IntMatrix, gamma: Sequence[int], power: int = 1) -> IntMatrix:
    """``transvection(gamma, power) @ m`` in O(n^2)."""
    if is_zero(gamma):
        return m
    n = m.n
    if len(gamma) != n:
        raise DimensionMismatch(f"class of length {len(gamma)} against {n}x{n} matrix")
    # r_j = <column_j(m), gamma>
    r = [0] * n
    for i in range(0, n, 2):
        gi, gj = gamma[i + 1], -gamma[i]
        if gi or gj:
            ri, rj = m.rows[i], m.rows[i + 1]
            for j in range(n):
                r[j] += ri[j] * gi + rj[j] * gj
    return IntMatrix(
        tuple(
            tuple(c + power * g * rr for c, rr in zip(row, r)) if g else row
            for row, g in zip(m.rows, gamma)
        )
    )


def twist_pair_matrix(s: Sequence[int], s_bar: Sequence[int], power: int = 1) -> IntMatrix:
    """Closed form of ``T_s T_{s_bar}^{-1}`` when ``<s, s_bar> = 0``.

    ``x -> x + <x, s> s - <x, s_bar> s_bar``; with ``power=-1`` the roles
    of the two classes swap.
    """
    if pairing(s, s_bar) != 0:
        raise InvariantError("twist pair requires <s, s_bar> = 0")
    if power == -1:
        s, s_bar = s_bar, s
    n = len(s)
    rows = []
    for r in range(n):
        row = []
        for c in range(n):
            # <e_c, v> = v[c+1] if c even else -v[c-1]
            ps = s[c + 1] if c % 2 == 0 else -s[c - 1]
            pb = s_bar[c + 1] if c % 2 == 0 else -s_bar[c - 1]
            row.append(int(r == c) + ps * s[r] - pb * s_bar[r])
        rows.append(tuple(row))
    return IntMatrix(tuple(rows))


def compose_word_matrices(ms: Sequence[IntMatrix], n: int | None = None) -> IntMatrix:
    """Matrix of a word whose letters act by ``ms`` (in word order)."""
    if not ms:
        if n is None:
            raise ValueError("empty product needs an explicit size")
        return IntMatrix.identity(n)
    size = ms[0].n
    out = IntMatrix.identity(size)
    for m in ms:
        if m.n != size:
            raise DimensionMismatch(f"rank mismatch in word: {m.n} vs {size}")
        out = m @ out
    return out


def deck_involution(k: int) -> IntMatrix:
    """Handle-swapping involution: ``a_i -> a_{k+1-i}``, ``b_i -> -b_{k+1-i}``."""
    if k < 0:
        raise ValueError("genus must be non-negative")
    n = 2 * k
    rows = [[0] * n for _ in range(n)]
    for i in range(k):
        j = k - 1 - i
        rows[2 * j][2 * i] = 1
        rows[2 * j + 1][2 * i + 1] = -1
    return IntMatrix.from_rows(rows)


def conjugate(m: IntMatrix, by: IntMatrix) -> IntMatrix:
    """``by @ m @ by^{-1}``; ``by`` must be unimodular."""
    if m.n != by.n:
        raise DimensionMismatch(f"{m.n}x{m.n} conjugated by {by.n}x{by.n}")
    return by @ m @ by.inverse()
