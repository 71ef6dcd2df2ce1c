"""Killing fields by ansatz: solve L_X g = 0 over all vector fields whose
components are polynomials of bounded total degree, then recover the Lie
algebra structure constants of the resulting span.

The Killing equation is linear in the unknown coefficients, so the solver
reduces to one exact sparse kernel computation over the rationals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .curvature import MetricSpec, lie_derivative_metric
from .fields import VectorField, bracket
from .linalg import fraction_matrix_inverse, rref_fraction, solve_exact
from .poly import Chart, LaurentPoly


def monomials_up_to(dim: int, max_degree: int) -> list[tuple[int, ...]]:
    """Exponent tuples with nonnegative entries and total degree <= max_degree,
    in graded lexicographic order."""
    out: list[tuple[int, ...]] = []

    def rec(prefix, remaining, budget):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for e in range(budget + 1):
            rec(prefix + [e], remaining - 1, budget - e)

    for total in range(max_degree + 1):
        start = len(out)
        rec([], dim, total)
        block = [t for t in out[start:] if sum(t) == total]
        del out[start:]
        out.extend(sorted(block, reverse=True))
    return out


def ansatz_basis(chart: Chart, max_degree: int) -> list[tuple[int, tuple[int, ...]]]:
    """(coordinate index, exponent tuple) pairs indexing the unknowns."""
    monos = monomials_up_to(chart.dim, max_degree)
    return [(k, alpha) for k in range(chart.dim) for alpha in monos]


def _basis_field(chart: Chart, k: int, alpha: tuple[int, ...]) -> VectorField:
    comps = [LaurentPoly.zero(chart) for _ in range(chart.dim)]
    comps[k] = LaurentPoly(chart, {alpha: Fraction(1)})
    return VectorField(chart, comps)


def _sparse_kernel(rows: list[dict[int, Fraction]], ncols: int) -> list[dict[int, Fraction]]:
    """Kernel basis of a sparse rational matrix, one dict per basis vector,
    in the reduced-echelon normal form (each free column carries a 1)."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = dict(row)
        while row:
            c = min(row)
            piv = pivots.get(c)
            if piv is None:
                inv = Fraction(1) / row[c]
                pivots[c] = {cc: vv * inv for cc, vv in row.items()}
                break
            factor = row[c]
            for cc, vv in piv.items():
                newv = row.get(cc, Fraction(0)) - factor * vv
                if newv:
                    row[cc] = newv
                else:
                    row.pop(cc, None)
    # back-eliminate to full reduced echelon form
    for c in sorted(pivots, reverse=True):
        piv = pivots[c]
        for c2, row2 in pivots.items():
            if c2 == c or c not in row2:
                continue
            factor = row2[c]
            for cc, vv in piv.items():
                newv = row2.get(cc, Fraction(0)) - factor * vv
                if newv:
                    row2[cc] = newv
                else:
                    row2.pop(cc, None)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = {f: Fraction(1)}
        for c, row in pivots.items():
            v = row.get(f)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis


def killing_solve(metric: MetricSpec, max_degree: int) -> list[VectorField]:
    """All Killing fields of the metric with polynomial components of total
    degree <= max_degree; exact, deterministic basis."""
    chart = metric.chart
    unknowns = ansatz_basis(chart, max_degree)
    columns: list[dict[tuple[int, int, tuple[int, ...]], Fraction]] = []
    for k, alpha in unknowns:
        lg = lie_derivative_metric(metric, _basis_field(chart, k, alpha))
        col: dict[tuple[int, int, tuple[int, ...]], Fraction] = {}
        for i in range(chart.dim):
            for j in range(i, chart.dim):
                for beta, coef in lg.entries[i][j].terms.items():
                    col[(i, j, beta)] = coef
        columns.append(col)

    row_keys = sorted({key for col in columns for key in col})
    row_index = {key: r for r, key in enumerate(row_keys)}
    rows: list[dict[int, Fraction]] = [dict() for _ in row_keys]
    for u, col in enumerate(columns):
        for key, coef in col.items():
            rows[row_index[key]][u] = coef

    fields = []
    for vec in _sparse_kernel(rows, len(unknowns)):
        comps = [LaurentPoly.zero(chart) for _ in range(chart.dim)]
        for u, coef in vec.items():
            k, alpha = unknowns[u]
            comps[k] = comps[k] + LaurentPoly(chart, {alpha: coef})
        fields.append(VectorField(chart, comps))
    return fields


# ----------------------------------------------------------------------
# span comparison and structure constants


def _coordinate_keys(fields: Sequence[VectorField]) -> list[tuple[int, tuple[int, ...]]]:
    keys = set()
    for f in fields:
        for k, comp in enumerate(f.comps):
            for alpha in comp.terms:
                keys.add((k, alpha))
    return sorted(keys)


def _field_vector(field: VectorField, keys: Sequence[tuple[int, tuple[int, ...]]]) -> list[Fraction]:
    vec = []
    for k, alpha in keys:
        vec.append(field.comps[k].terms.get(alpha, Fraction(0)))
    return vec


def _has_extra_monomials(field: VectorField, keyset: set) -> bool:
    for k, comp in enumerate(field.comps):
        for alpha in comp.terms:
            if (k, alpha) not in keyset:
                return True
    return False


def span_contains(span: Sequence[VectorField], field: VectorField) -> bool:
    """Exact membership of a field in the rational span of a list of fields."""
    keys = _coordinate_keys(span)
    if _has_extra_monomials(field, set(keys)):
        return False
    a = [[Fraction(0)] * len(span) for _ in keys]
    for j, f in enumerate(span):
        vec = _field_vector(f, keys)
        for i, v in enumerate(vec):
            a[i][j] = v
    return solve_exact(a, _field_vector(field, keys)) is not None


def spans_equal(a: Sequence[VectorField], b: Sequence[VectorField]) -> bool:
    return all(span_contains(a, f) for f in b) and all(span_contains(b, f) for f in a)


def structure_constants(fields: Sequence[VectorField]) -> list[list[list[Fraction]]]:
    """C[a][b][c] with [X_a, X_b] = sum_c C[a][b][c] X_c; raises ValueError
    if some bracket leaves the span (the list does not close into an algebra)
    or the fields are linearly dependent."""
    m = len(fields)
    keys = _coordinate_keys(fields)
    keyset = set(keys)
    mat = [[Fraction(0)] * m for _ in keys]
    for j, f in enumerate(fields):
        vec = _field_vector(f, keys)
        for i, v in enumerate(vec):
            mat[i][j] = v
    # invertible row selection: pivot columns of the transpose are row indices
    _, piv = rref_fraction([list(col) for col in zip(*mat)])
    if len(piv) != m:
        raise ValueError("fields are linearly dependent")
    sub_inv = fraction_matrix_inverse([mat[i] for i in piv])

    out = [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]
    for a in range(m):
        for b in range(a + 1, m):
            br = bracket(fields[a], fields[b])
            if _has_extra_monomials(br, keyset):
                raise ValueError("bracket leaves the span: not closed")
            vec = _field_vector(br, keys)
            coeffs = [
                sum(sub_inv[r][s] * vec[piv[s]] for s in range(m)) for r in range(m)
            ]
            # verify on the full (possibly overdetermined) system
            for i in range(len(keys)):
                if sum(mat[i][c] * coeffs[c] for c in range(m)) != vec[i]:
                    raise ValueError("bracket leaves the span: not closed")
            for c in range(m):
                out[a][b][c] = coeffs[c]
                out[b][a][c] = -coeffs[c]
    return out
