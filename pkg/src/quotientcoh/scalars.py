"""Exact scalars and dense exact linear algebra.

Every rank, kernel and echelon form in this package is computed over the
rationals with `fractions.Fraction`, so results are exact and runs are
reproducible.  Rank uses fraction-free Bareiss elimination on integer
rows (denominators are cleared row by row, which never changes the
rank), keeping intermediate entries at minor-determinant size instead of
letting numerators and denominators blow up.

A single symbolic irrational ``alpha`` is supported through `ExtScalar`,
a pair p + q*alpha with p, q rational.  ``alpha`` carries no polynomial
relation, so p + q*alpha = 0 forces p = q = 0, and only the linear
operations the rest of the package needs are defined: sums, negation,
and scaling by rationals.  Two ExtScalars are never multiplied; the
pipelines that consume them are arranged so the product is never needed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction]

_EXT_RE = re.compile(
    r"^(?P<rat>-?\d+(?:/\d+)?)"
    r"(?:(?P<sign>[+-])(?P<irr>\d+(?:/\d+)?)\*alpha)?$"
)


@dataclass(frozen=True)
class ExtScalar:
    """A number p + q*alpha with p, q rational and alpha a fixed irrational.

    alpha is treated as a pure symbol, so the zero test is exact:
    the scalar vanishes iff both components vanish.
    """

    rat: Fraction = Fraction(0)
    irr: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rat", Fraction(self.rat))
        object.__setattr__(self, "irr", Fraction(self.irr))

    def __add__(self, other: "ExtScalar") -> "ExtScalar":
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return ExtScalar(self.rat + other.rat, self.irr + other.irr)

    def __sub__(self, other: "ExtScalar") -> "ExtScalar":
        if not isinstance(other, ExtScalar):
            return NotImplemented
        return ExtScalar(self.rat - other.rat, self.irr - other.irr)

    def __neg__(self) -> "ExtScalar":
        return ExtScalar(-self.rat, -self.irr)

    def __mul__(self, other: RationalLike) -> "ExtScalar":
        if isinstance(other, ExtScalar):
            raise TypeError("products of two ExtScalars are not defined")
        c = Fraction(other)
        return ExtScalar(self.rat * c, self.irr * c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.rat == 0 and self.irr == 0

    def substitute(self, value: RationalLike) -> Fraction:
        """Evaluate at a rational stand-in for alpha."""
        return self.rat + self.irr * Fraction(value)

    def __str__(self) -> str:
        if self.irr == 0:
            return str(self.rat)
        sign = "+" if self.irr >= 0 else "-"
        return "%s%s%s*alpha" % (self.rat, sign, abs(self.irr))


def ext_is_zero(s: ExtScalar) -> bool:
    """Exact zero test for p + q*alpha: true iff p = q = 0."""
    return s.is_zero()


def parse_ext_scalar(text: str) -> ExtScalar:
    """Parse 'p', 'p+q*alpha' or 'p-q*alpha' with p, q integer or fraction.

    Decimal literals are rejected on purpose: exact fields must stay exact.
    """
    raw = text.strip()
    match = _EXT_RE.match(raw)
    if match is None:
        if re.search(r"\d\.\d|\.\d|\d\.", raw):
            raise ValueError(
                "decimal literal %r not allowed in an exact field; "
                "use an integer or a fraction like 3/10" % raw
            )
        raise ValueError(
            "cannot parse %r as an exact scalar "
            "(expected p or p+q*alpha with p, q rational)" % raw
        )
    rat = Fraction(match.group("rat"))
    irr = Fraction(0)
    if match.group("irr") is not None:
        irr = Fraction(match.group("irr"))
        if match.group("sign") == "-":
            irr = -irr
    return ExtScalar(rat, irr)


def _coerce_row(row: Iterable[RationalLike], cols: int | None) -> tuple[Fraction, ...]:
    out = tuple(Fraction(x) for x in row)
    if cols is not None and len(out) != cols:
        raise ValueError("row length %d != expected %d" % (len(out), cols))
    return out


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable dense matrix with Fraction entries."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(
        cls, rows: Sequence[Iterable[RationalLike]], cols: int | None = None
    ) -> "ExactMatrix":
        data = [tuple(Fraction(x) for x in r) for r in rows]
        if cols is None:
            if not data:
                raise ValueError("cannot infer width of a matrix with no rows")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows: %d != %d" % (len(r), cols))
        return cls(len(data), cols, tuple(data))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "ExactMatrix":
        row = (Fraction(0),) * cols
        return cls(rows, cols, (row,) * rows)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(
            n, n,
            tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(n))
                for i in range(n)
            ),
        )

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.cols, self.rows,
            tuple(
                tuple(self.entries[i][j] for i in range(self.rows))
                for j in range(self.cols)
            ),
        )

    def scale(self, c: RationalLike) -> "ExactMatrix":
        f = Fraction(c)
        return ExactMatrix(
            self.rows, self.cols,
            tuple(tuple(x * f for x in row) for row in self.entries),
        )

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(
                "shape mismatch: %dx%d @ %dx%d"
                % (self.rows, self.cols, other.rows, other.cols)
            )
        bt = other.transpose().entries
        return ExactMatrix(
            self.rows, other.cols,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                for row in self.entries
            ),
        )

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)


MatrixLike = Union[ExactMatrix, Sequence[Sequence[RationalLike]]]


def as_matrix(m: MatrixLike, cols: int | None = None) -> ExactMatrix:
    if isinstance(m, ExactMatrix):
        return m
    return ExactMatrix.from_rows(m, cols=cols)


def _integer_rows(m: ExactMatrix) -> list[list[int]]:
    # Row scaling by the denominator lcm preserves rank and row span shape.
    out = []
    for row in m.entries:
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def rank(m: MatrixLike) -> int:
    """Exact rank via fraction-free Bareiss elimination.

    Pivots are the first nonzero entry scanning down each column in
    order, so the computation is deterministic.  All intermediate values
    are integers (minors of the cleared matrix), which keeps the entry
    growth polynomial instead of the exponential blowup of naive
    fraction arithmetic.
    """
    mat = as_matrix(m)
    a = _integer_rows(mat)
    nrows, ncols = mat.rows, mat.cols
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            for j in range(c + 1, ncols):
                # Bareiss one-step update: exact integer division.
                a[i][j] = (p * a[i][j] - f * a[r][j]) // prev
            a[i][c] = 0
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def rref(m: MatrixLike) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form over the rationals.

    Returns the nonzero rows and the pivot column indices.  The output
    is the canonical representative of the row span: two matrices have
    the same row span iff their rref rows agree.
    """
    mat = as_matrix(m)
    a = [list(row) for row in mat.entries]
    pivots: list[int] = []
    r = 0
    for c in range(mat.cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in a[:r]), tuple(pivots)


def nullspace_basis(m: MatrixLike) -> list[tuple[Fraction, ...]]:
    """Deterministic exact kernel basis with one vector per free column.

    Each basis vector has a 1 in its free coordinate and zeros in the
    other free coordinates, so the list has exactly cols - rank members
    and m @ v = 0 holds exactly for each.
    """
    mat = as_matrix(m)
    rows, pivots = rref(mat)
    free = [c for c in range(mat.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * mat.cols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis
