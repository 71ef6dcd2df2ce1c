"""Exact dense linear algebra over Laurent polynomials and rationals.

PolyMatrix is a thin dense container; the heavy lifting is the fraction-free
Bareiss determinant (avoids rational-function blowup), an adjugate-based
exact inverse, and reduced row echelon / kernel routines over Fraction
matrices used by the Killing solver.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .poly import Chart, LaurentPoly, RationalFunction, divexact


class PolyMatrix:
    __slots__ = ("chart", "rows", "cols", "entries")

    def __init__(self, chart: Chart, entries: Sequence[Sequence[LaurentPoly]]):
        self.chart = chart
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
            for e in row:
                if not isinstance(e, LaurentPoly) or e.chart != chart:
                    raise ValueError("entry chart mismatch")

    # ------------------------------------------------------------------

    @staticmethod
    def zero(chart: Chart, rows: int, cols: int) -> "PolyMatrix":
        z = LaurentPoly.zero(chart)
        return PolyMatrix(chart, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(chart: Chart, nn: int) -> "PolyMatrix":
        z = LaurentPoly.zero(chart)
        one = LaurentPoly.one(chart)
        return PolyMatrix(chart, [[one if i == j else z for j in range(nn)] for i in range(nn)])

    @staticmethod
    def from_scalars(chart: Chart, grid: Sequence[Sequence]) -> "PolyMatrix":
        return PolyMatrix(
            chart, [[LaurentPoly.constant(chart, v) for v in row] for row in grid]
        )

    def __getitem__(self, ij: tuple[int, int]) -> LaurentPoly:
        i, j = ij
        return self.entries[i][j]

    def map(self, fn: Callable[[LaurentPoly], LaurentPoly]) -> "PolyMatrix":
        return PolyMatrix(self.chart, [[fn(e) for e in row] for row in self.entries])

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolyMatrix(
            self.chart,
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "PolyMatrix":
        return self.map(lambda e: e * c)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        z = LaurentPoly.zero(self.chart)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.entries[i][k]
                    b = other.entries[k][j]
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.chart, out)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(
            self.chart,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __hash__(self):
        raise TypeError("PolyMatrix is unhashable")

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def substitute(self, mapping, chart: Chart) -> "PolyMatrix":
        return PolyMatrix(
            chart, [[e.substitute(mapping, chart) for e in row] for row in self.entries]
        )

    def evaluate(self, point) -> list[list[Fraction]]:
        return [[e.evaluate(point) for e in row] for row in self.entries]

    def __repr__(self) -> str:
        body = "\n".join("  [" + ", ".join(str(e) for e in row) + "]" for row in self.entries)
        return f"PolyMatrix({self.rows}x{self.cols},\n{body})"


def bareiss_det(m: PolyMatrix) -> LaurentPoly:
    """Fraction-free determinant.  Exact for polynomial entries.

    Laurent entries are cleared to plain polynomials by factoring a monomial
    out of each row first.
    """
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    nn = m.rows
    chart = m.chart
    if nn == 0:
        return LaurentPoly.one(chart)

    # factor out row-wise monomials so intermediate divisions stay polynomial
    prefactor = LaurentPoly.one(chart)
    a: list[list[LaurentPoly]] = []
    for row in m.entries:
        mins = [0] * chart.dim
        for e in row:
            for exps in e.terms:
                for i, v in enumerate(exps):
                    if v < mins[i]:
                        mins[i] = v
        shift = LaurentPoly(chart, {tuple(mins): 1})
        if any(mins):
            prefactor = prefactor * shift
            inv = shift.inverse()
            a.append([e * inv for e in row])
        else:
            a.append(list(row))

    sign = 1
    prev = LaurentPoly.one(chart)
    for k in range(nn - 1):
        if a[k][k].is_zero():
            pivot_row = next((r for r in range(k + 1, nn) if not a[r][k].is_zero()), None)
            if pivot_row is None:
                return LaurentPoly.zero(chart)
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, nn):
            for j in range(k + 1, nn):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                q = divexact(num, prev)
                if q is None:
                    raise ArithmeticError("Bareiss exact division failed")
                a[i][j] = q
            a[i][k] = LaurentPoly.zero(chart)
        prev = a[k][k]
    det = a[nn - 1][nn - 1]
    if sign < 0:
        det = -det
    return prefactor * det


def _minor(m: PolyMatrix, drop_row: int, drop_col: int) -> PolyMatrix:
    return PolyMatrix(
        m.chart,
        [
            [m.entries[i][j] for j in range(m.cols) if j != drop_col]
            for i in range(m.rows)
            if i != drop_row
        ],
    )


class SingularMatrixError(ValueError):
    pass


def matrix_inverse_exact(m: PolyMatrix):
    """Exact inverse via adjugate / Bareiss determinant.

    Entries come back as LaurentPoly when the determinant divides exactly
    (always the case for unimodular metrics), otherwise as RationalFunction.
    Returns (inverse_entries, det); inverse_entries is a PolyMatrix when all
    entries stayed polynomial, else a plain nested list of RationalFunction.
    """
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    det = bareiss_det(m)
    if det.is_zero():
        raise SingularMatrixError("singular matrix")
    nn = m.rows
    out: list[list] = []
    all_poly = True
    for i in range(nn):
        row = []
        for j in range(nn):
            cof = bareiss_det(_minor(m, j, i))  # adjugate: transpose of cofactors
            if (i + j) % 2:
                cof = -cof
            q = divexact(cof, det)
            if q is None:
                all_poly = False
                row.append(RationalFunction(cof, det))
            else:
                row.append(q)
        out.append(row)
    if all_poly:
        return PolyMatrix(m.chart, out), det
    return out, det


# ----------------------------------------------------------------------
# rational (Fraction) linear algebra for the solver layer


def rref_fraction(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [v / pv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r] + m[r:], pivots


def kernel_exact(rows: list[list[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel of a rational matrix, in reduced echelon
    normal form (each basis vector has a leading 1 in a free column, zeros in
    the other free columns, deterministic order)."""
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for empty matrix")
        ncols = len(rows[0])
    if not rows:
        basis = []
        for c in range(ncols):
            v = [Fraction(0)] * ncols
            v[c] = Fraction(1)
            basis.append(v)
        return basis
    reduced, pivots = rref_fraction(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(v)
    return basis


def solve_exact(a_rows: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """One solution of A x = b over the rationals, or None if inconsistent.
    Free variables are set to zero."""
    if not a_rows:
        return None if any(v != 0 for v in b) else []
    ncols = len(a_rows[0])
    aug = [row + [rhs] for row, rhs in zip(a_rows, b)]
    reduced, pivots = rref_fraction(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r][ncols]
    return x


def fraction_matrix_inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    nn = len(rows)
    aug = [list(r) + [Fraction(1 if i == j else 0) for j in range(nn)] for i, r in enumerate(rows)]
    reduced, pivots = rref_fraction(aug)
    if pivots != list(range(nn)):
        raise SingularMatrixError("singular rational matrix")
    return [row[nn:] for row in reduced[:nn]]
