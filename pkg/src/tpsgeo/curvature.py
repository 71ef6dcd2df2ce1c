"""Generic pseudo-Riemannian pipeline over the exact tower.

metric -> Christoffel -> Riemann -> Ricci -> scalar -> sectional, plus the
covariant derivative, curvature transformation, Gram matrices, and the
Lie derivative of a metric.  Everything is symbolic and exact; no floats.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .fields import VectorField, bracket
from .linalg import PolyMatrix, bareiss_det, matrix_inverse_exact
from .poly import Chart, LaurentPoly


class MetricSpec:
    """Symmetric exact metric with its exact inverse."""

    __slots__ = ("name", "chart", "g", "g_inv", "det", "_christoffel")

    def __init__(self, name: str, chart: Chart, g: PolyMatrix, g_inv: PolyMatrix | None = None):
        if g.rows != g.cols or g.rows != chart.dim:
            raise ValueError("metric shape != chart dimension")
        if not g.is_symmetric():
            raise ValueError("metric must be symmetric")
        self.name = name
        self.chart = chart
        self.g = g
        if g_inv is None:
            inv, det = matrix_inverse_exact(g)
            if not isinstance(inv, PolyMatrix):
                raise ValueError("metric inverse is not polynomial; unsupported here")
            self.g_inv = inv
            self.det = det
        else:
            ident = PolyMatrix.identity(chart, chart.dim)
            if (g @ g_inv) != ident:
                raise ValueError("supplied inverse fails g @ g_inv == I")
            self.g_inv = g_inv
            self.det = bareiss_det(g)
        self._christoffel = None

    @property
    def dim(self) -> int:
        return self.chart.dim

    def inner(self, x: VectorField, y: VectorField) -> LaurentPoly:
        """g(X, Y) as a Laurent polynomial."""
        acc = LaurentPoly.zero(self.chart)
        for i in range(self.dim):
            if x.comps[i].is_zero():
                continue
            for j in range(self.dim):
                gij = self.g.entries[i][j]
                if gij.is_zero() or y.comps[j].is_zero():
                    continue
                acc = acc + x.comps[i] * gij * y.comps[j]
        return acc

    def christoffel(self) -> "ChristoffelTable":
        if self._christoffel is None:
            self._christoffel = christoffel(self)
        return self._christoffel


class ChristoffelTable:
    """Gamma^a_{bc}, symmetric in (b, c); dense nested lists."""

    __slots__ = ("chart", "gamma")

    def __init__(self, chart: Chart, gamma: Sequence[Sequence[Sequence[LaurentPoly]]]):
        self.chart = chart
        self.gamma = gamma
        d = chart.dim
        for a in range(d):
            for b in range(d):
                for c in range(b + 1, d):
                    if gamma[a][b][c] != gamma[a][c][b]:
                        raise ValueError("Christoffel symbols not symmetric in lower indices")

    def nonzero(self) -> dict[tuple[str, str, str], LaurentPoly]:
        """Map (upper, lower1, lower2) with lower1 <= lower2 positionally."""
        names = self.chart.names
        out = {}
        d = self.chart.dim
        for a in range(d):
            for b in range(d):
                for c in range(b, d):
                    v = self.gamma[a][b][c]
                    if not v.is_zero():
                        out[(names[a], names[b], names[c])] = v
        return out


def christoffel(metric: MetricSpec) -> ChristoffelTable:
    """Gamma^a_{bc} = (1/2) g^{as} (d_b g_{sc} + d_c g_{sb} - d_s g_{bc})."""
    chart = metric.chart
    d = chart.dim
    names = chart.names
    half = Fraction(1, 2)
    dg = [
        [[metric.g.entries[i][j].partial(names[k]) for k in range(d)] for j in range(d)]
        for i in range(d)
    ]
    gamma = []
    for a in range(d):
        plane = []
        for b in range(d):
            row = []
            for c in range(d):
                if c < b:
                    row.append(None)  # mirrored from the upper triangle below
                    continue
                acc = LaurentPoly.zero(chart)
                for s in range(d):
                    gas = metric.g_inv.entries[a][s]
                    if gas.is_zero():
                        continue
                    term = dg[s][c][b] + dg[s][b][c] - dg[b][c][s]
                    if term.is_zero():
                        continue
                    acc = acc + gas * term
                row.append(acc * half)
            plane.append(row)
        # mirror the lower triangle
        for b in range(d):
            for c in range(b):
                plane[b][c] = plane[c][b]
        gamma.append(plane)
    return ChristoffelTable(chart, gamma)


def trace_form(metric: MetricSpec) -> list[LaurentPoly]:
    """gamma_a = Gamma^b_{ab} (trace 1-form of the connection)."""
    table = metric.christoffel().gamma
    d = metric.dim
    out = []
    for a in range(d):
        acc = LaurentPoly.zero(metric.chart)
        for b in range(d):
            acc = acc + table[b][a][b]
        out.append(acc)
    return out


def covariant_derivative(metric: MetricSpec, x: VectorField, y: VectorField) -> VectorField:
    """(nabla_X Y)^k = X^i d_i Y^k + Gamma^k_{ij} X^i Y^j."""
    chart = metric.chart
    if x.chart != chart or y.chart != chart:
        raise ValueError("fields not over the metric chart")
    d = chart.dim
    gamma = metric.christoffel().gamma
    comps = []
    for k in range(d):
        acc = x.apply(y.comps[k])
        for i in range(d):
            if x.comps[i].is_zero():
                continue
            for j in range(d):
                gk = gamma[k][i][j]
                if gk.is_zero() or y.comps[j].is_zero():
                    continue
                acc = acc + gk * x.comps[i] * y.comps[j]
        comps.append(acc)
    return VectorField(chart, comps)


def riemann_transform(
    metric: MetricSpec, x: VectorField, y: VectorField, z: VectorField
) -> VectorField:
    """R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z."""
    a = covariant_derivative(metric, x, covariant_derivative(metric, y, z))
    b = covariant_derivative(metric, y, covariant_derivative(metric, x, z))
    c = covariant_derivative(metric, bracket(x, y), z)
    return a - b - c


def riemann_tensor(metric: MetricSpec) -> list:
    """Components R^i_{jkl} with R(d_k, d_l) d_j = R^i_{jkl} d_i."""
    chart = metric.chart
    d = chart.dim
    names = chart.names
    gamma = metric.christoffel().gamma
    riem = [
        [[[LaurentPoly.zero(chart) for _ in range(d)] for _ in range(d)] for _ in range(d)]
        for _ in range(d)
    ]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(k + 1, d):
                    acc = gamma[i][l][j].partial(names[k]) - gamma[i][k][j].partial(names[l])
                    for s in range(d):
                        if not gamma[s][l][j].is_zero() and not gamma[i][k][s].is_zero():
                            acc = acc + gamma[i][k][s] * gamma[s][l][j]
                        if not gamma[s][k][j].is_zero() and not gamma[i][l][s].is_zero():
                            acc = acc - gamma[i][l][s] * gamma[s][k][j]
                    riem[i][j][k][l] = acc
                    riem[i][j][l][k] = -acc
    return riem


class CurvatureTensors:
    __slots__ = ("riemann", "ricci", "scalar")

    def __init__(self, riemann, ricci: PolyMatrix, scalar: LaurentPoly):
        self.riemann = riemann
        self.ricci = ricci
        self.scalar = scalar


def ricci_scalar(metric: MetricSpec) -> CurvatureTensors:
    """Ricci via the index formula, cross-checked against the contraction of
    the full Riemann tensor; scalar = g^{ab} R_ab."""
    chart = metric.chart
    d = chart.dim
    names = chart.names
    gamma = metric.christoffel().gamma

    # index formula: R_ab = Gamma^m_{ba,m} - Gamma^m_{ma,b}
    #                     + Gamma^m_{mc} Gamma^c_{ba} - Gamma^m_{bc} Gamma^c_{ma}
    ric_rows = []
    for a in range(d):
        row = []
        for b in range(d):
            acc = LaurentPoly.zero(chart)
            for m in range(d):
                acc = acc + gamma[m][b][a].partial(names[m])
                acc = acc - gamma[m][m][a].partial(names[b])
                for c in range(d):
                    if not gamma[m][m][c].is_zero() and not gamma[c][b][a].is_zero():
                        acc = acc + gamma[m][m][c] * gamma[c][b][a]
                    if not gamma[m][b][c].is_zero() and not gamma[c][m][a].is_zero():
                        acc = acc - gamma[m][b][c] * gamma[c][m][a]
            row.append(acc)
        ric_rows.append(row)
    ricci = PolyMatrix(chart, ric_rows)

    riem = riemann_tensor(metric)
    for a in range(d):
        for b in range(d):
            contraction = LaurentPoly.zero(chart)
            for m in range(d):
                contraction = contraction + riem[m][a][m][b]
            if contraction != ricci.entries[a][b]:
                raise ArithmeticError("Ricci index formula disagrees with Riemann contraction")

    scalar = LaurentPoly.zero(chart)
    for a in range(d):
        for b in range(d):
            if not metric.g_inv.entries[a][b].is_zero():
                scalar = scalar + metric.g_inv.entries[a][b] * ricci.entries[a][b]
    return CurvatureTensors(riem, ricci, scalar)


class DegeneratePlaneError(ValueError):
    """The plane spanned by the two fields has |A ^ B|^2 = 0 at the point."""


def sectional_parts(
    metric: MetricSpec, a: VectorField, b: VectorField, point: Mapping
) -> tuple[Fraction, Fraction]:
    """(numerator, denominator) of the sectional curvature at the point:
    num = g(R(A,B)B, A), den = g(A,A) g(B,B) - g(A,B)^2."""
    rab_b = riemann_transform(metric, a, b, b)
    num = metric.inner(rab_b, a).evaluate(point)
    gaa = metric.inner(a, a).evaluate(point)
    gbb = metric.inner(b, b).evaluate(point)
    gab = metric.inner(a, b).evaluate(point)
    return num, gaa * gbb - gab * gab


def sectional(metric: MetricSpec, a: VectorField, b: VectorField, point: Mapping) -> Fraction:
    num, den = sectional_parts(metric, a, b, point)
    if den == 0:
        raise DegeneratePlaneError("degenerate plane: |A ^ B|^2 = 0 at the point")
    return num / den


def gram_matrix(metric: MetricSpec, frame: Sequence[VectorField]) -> PolyMatrix:
    return PolyMatrix(
        metric.chart, [[metric.inner(x, y) for y in frame] for x in frame]
    )


def lie_derivative_metric(metric: MetricSpec, x: VectorField) -> PolyMatrix:
    """(L_X g)_{ij} = X^k d_k g_{ij} + g_{ik} d_j X^k + g_{kj} d_i X^k."""
    return lie_derivative_symmetric(metric.g, x)


def lie_derivative_symmetric(g: PolyMatrix, x: VectorField) -> PolyMatrix:
    chart = g.chart
    if x.chart != chart:
        raise ValueError("field not over metric chart")
    d = chart.dim
    names = chart.names
    dx = [[x.comps[k].partial(names[i]) for i in range(d)] for k in range(d)]
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = LaurentPoly.zero(chart)
            for k in range(d):
                if not x.comps[k].is_zero():
                    acc = acc + x.comps[k] * g.entries[i][j].partial(names[k])
                if not g.entries[i][k].is_zero() and not dx[k][j].is_zero():
                    acc = acc + g.entries[i][k] * dx[k][j]
                if not g.entries[k][j].is_zero() and not dx[k][i].is_zero():
                    acc = acc + g.entries[k][j] * dx[k][i]
            row.append(acc)
        rows.append(row)
    return PolyMatrix(chart, rows)
