"""Symbolic vector fields, differential forms, and polynomial maps.

Forms are stored as dicts from strictly increasing coordinate-index tuples to
Laurent-polynomial coefficients, which makes wedge products, the exterior
derivative, interior products, Cartan's formula, and exact pullbacks all a
few lines each.  Vector fields carry one Laurent polynomial per coordinate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import PolyMatrix
from .poly import Chart, LaurentPoly, Scalar


class VectorField:
    __slots__ = ("chart", "comps")

    def __init__(self, chart: Chart, comps: Sequence[LaurentPoly]):
        if len(comps) != chart.dim:
            raise ValueError("component count != chart dimension")
        for c in comps:
            if c.chart != chart:
                raise ValueError("component chart mismatch")
        self.chart = chart
        self.comps = tuple(comps)

    @staticmethod
    def zero(chart: Chart) -> "VectorField":
        z = LaurentPoly.zero(chart)
        return VectorField(chart, [z] * chart.dim)

    @staticmethod
    def coordinate(chart: Chart, name: str) -> "VectorField":
        """The coordinate field d/d(name)."""
        comps = [LaurentPoly.zero(chart)] * chart.dim
        comps[chart.index(name)] = LaurentPoly.one(chart)
        return VectorField(chart, comps)

    @staticmethod
    def from_dict(chart: Chart, comps: Mapping[str, LaurentPoly | Scalar]) -> "VectorField":
        out = [LaurentPoly.zero(chart)] * chart.dim
        for nm, c in comps.items():
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.constant(chart, c)
            out[chart.index(nm)] = c
        return VectorField(chart, out)

    def __add__(self, other: "VectorField") -> "VectorField":
        if self.chart != other.chart:
            raise ValueError("chart mismatch")
        return VectorField(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + other.scale(-1)

    def __neg__(self) -> "VectorField":
        return self.scale(-1)

    def scale(self, c) -> "VectorField":
        return VectorField(self.chart, [comp * c for comp in self.comps])

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.comps == other.comps

    def __hash__(self):
        return hash((self.chart, self.comps))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def apply(self, f: LaurentPoly) -> LaurentPoly:
        """Directional derivative X(f)."""
        acc = LaurentPoly.zero(self.chart)
        for comp, nm in zip(self.comps, self.chart.names):
            if not comp.is_zero():
                acc = acc + comp * f.partial(nm)
        return acc

    def evaluate(self, point) -> list[Fraction]:
        return [c.evaluate(point) for c in self.comps]

    def with_chart(self, chart: Chart) -> "VectorField":
        """Reinterpret on a larger chart (new coordinates get zero component)."""
        comps = [LaurentPoly.zero(chart)] * chart.dim
        for nm, c in zip(self.chart.names, self.comps):
            comps[chart.index(nm)] = c.with_chart(chart)
        return VectorField(chart, comps)

    def __repr__(self) -> str:
        parts = [
            f"({c})*d/d{nm}"
            for c, nm in zip(self.comps, self.chart.names)
            if not c.is_zero()
        ]
        return "VectorField(" + (" + ".join(parts) if parts else "0") + ")"


def bracket(x: VectorField, y: VectorField) -> VectorField:
    """Lie bracket [X, Y]^k = X^i d_i Y^k - Y^i d_i X^k."""
    if x.chart != y.chart:
        raise ValueError("chart mismatch")
    chart = x.chart
    comps = []
    for k in range(chart.dim):
        acc = LaurentPoly.zero(chart)
        for i, nm in enumerate(chart.names):
            if not x.comps[i].is_zero():
                acc = acc + x.comps[i] * y.comps[k].partial(nm)
            if not y.comps[i].is_zero():
                acc = acc - y.comps[i] * x.comps[k].partial(nm)
        comps.append(acc)
    return VectorField(chart, comps)


class Form:
    """Exterior differential form of fixed degree with Laurent coefficients."""

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart: Chart, degree: int, terms: Mapping[tuple, LaurentPoly] | None = None):
        # degree > chart.dim is allowed but such a form is identically zero
        if degree < 0:
            raise ValueError("degree out of range")
        self.chart = chart
        self.degree = degree
        clean: dict[tuple, LaurentPoly] = {}
        if terms:
            for idx, coef in terms.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise ValueError("index tuple length != degree")
                if list(idx) != sorted(set(idx)):
                    raise ValueError("indices must be strictly increasing")
                if idx and (idx[0] < 0 or idx[-1] >= chart.dim):
                    raise ValueError("coordinate index out of range")
                if not coef.is_zero():
                    clean[idx] = coef
        self.terms = clean

    # ------------------------------------------------------------------

    @staticmethod
    def function(chart: Chart, f: LaurentPoly) -> "Form":
        return Form(chart, 0, {(): f})

    @staticmethod
    def d_coord(chart: Chart, name: str) -> "Form":
        """The coordinate differential d(name)."""
        return Form(chart, 1, {(chart.index(name),): LaurentPoly.one(chart)})

    @staticmethod
    def one_form(chart: Chart, coeffs: Mapping[str, LaurentPoly | Scalar]) -> "Form":
        terms = {}
        for nm, c in coeffs.items():
            if not isinstance(c, LaurentPoly):
                c = LaurentPoly.constant(chart, c)
            terms[(chart.index(nm),)] = c
        return Form(chart, 1, terms)

    def __add__(self, other: "Form") -> "Form":
        if self.chart != other.chart or self.degree != other.degree:
            raise ValueError("form mismatch")
        terms = dict(self.terms)
        for idx, c in other.terms.items():
            s = terms.get(idx)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(idx, None)
            else:
                terms[idx] = s
        return Form(self.chart, self.degree, terms)

    def __sub__(self, other: "Form") -> "Form":
        return self + other.scale(-1)

    def __neg__(self) -> "Form":
        return self.scale(-1)

    def scale(self, c) -> "Form":
        return Form(self.chart, self.degree, {i: f * c for i, f in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.chart == other.chart
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("Form is unhashable")

    def is_zero(self) -> bool:
        return not self.terms

    # ------------------------------------------------------------------

    def wedge(self, other: "Form") -> "Form":
        if self.chart != other.chart:
            raise ValueError("chart mismatch")
        deg = self.degree + other.degree
        out: dict[tuple, LaurentPoly] = {}
        for i1, c1 in self.terms.items():
            for i2, c2 in other.terms.items():
                if set(i1) & set(i2):
                    continue
                merged = i1 + i2
                key, sign = _sort_with_sign(merged)
                coef = c1 * c2
                if sign < 0:
                    coef = -coef
                s = out.get(key)
                s = coef if s is None else s + coef
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return Form(self.chart, deg, out)

    def d(self) -> "Form":
        """Exterior derivative."""
        chart = self.chart
        out: dict[tuple, LaurentPoly] = {}
        for idx, coef in self.terms.items():
            for j, nm in enumerate(chart.names):
                if j in idx:
                    continue
                dc = coef.partial(nm)
                if dc.is_zero():
                    continue
                key, sign = _sort_with_sign((j,) + idx)
                if sign < 0:
                    dc = -dc
                s = out.get(key)
                s = dc if s is None else s + dc
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return Form(chart, self.degree + 1, out)

    def insert(self, x: VectorField) -> "Form":
        """Interior product i_X."""
        if self.degree == 0:
            raise ValueError("cannot contract a 0-form")
        if x.chart != self.chart:
            raise ValueError("chart mismatch")
        out: dict[tuple, LaurentPoly] = {}
        for idx, coef in self.terms.items():
            for t, j in enumerate(idx):
                comp = x.comps[j]
                if comp.is_zero():
                    continue
                c = coef * comp
                if t % 2:
                    c = -c
                key = idx[:t] + idx[t + 1:]
                s = out.get(key)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return Form(self.chart, self.degree - 1, out)

    def __call__(self, *fields: VectorField) -> LaurentPoly:
        """Evaluate on vector fields (full contraction)."""
        if len(fields) != self.degree:
            raise ValueError("wrong number of arguments")
        # omega(a, b, ...) = i_... i_b i_a omega: insert left argument first
        cur = self
        for x in fields:
            cur = cur.insert(x)
        return cur.terms.get((), LaurentPoly.zero(self.chart))

    def lie_derivative(self, x: VectorField) -> "Form":
        """Cartan: L_X = i_X d + d i_X."""
        part1 = self.d().insert(x)
        if self.degree == 0:
            return part1
        return part1 + self.insert(x).d()

    def coefficient(self, names: Sequence[str]) -> LaurentPoly:
        idx, sign = _sort_with_sign(tuple(self.chart.index(nm) for nm in names))
        c = self.terms.get(idx, LaurentPoly.zero(self.chart))
        return -c if sign < 0 else c

    def __repr__(self) -> str:
        if not self.terms:
            return f"Form(degree {self.degree}, 0)"
        names = self.chart.names
        parts = []
        for idx in sorted(self.terms):
            basis = "^".join(f"d{names[i]}" for i in idx) or "1"
            parts.append(f"({self.terms[idx]}) {basis}")
        return "Form(" + " + ".join(parts) + ")"


def _sort_with_sign(idx: tuple) -> tuple[tuple, int]:
    """Sort index tuple, tracking permutation sign; repeated index -> sign 0
    is impossible here because callers filter duplicates."""
    lst = list(idx)
    sign = 1
    for i in range(1, len(lst)):
        j = i
        while j > 0 and lst[j - 1] > lst[j]:
            lst[j - 1], lst[j] = lst[j], lst[j - 1]
            sign = -sign
            j -= 1
    return tuple(lst), sign


def wedge_all(forms: Sequence[Form]) -> Form:
    if not forms:
        raise ValueError("empty wedge")
    acc = forms[0]
    for f in forms[1:]:
        acc = acc.wedge(f)
    return acc


def pull_form_with_params(f: PolyMap, omega: Form, params) -> Form:
    """Pullback along a family of maps: the named source symbols are treated
    as constant parameters, so their differentials are dropped.  This is the
    slice-wise pullback for each fixed parameter value, computed jointly."""
    params = set(params)
    d_comp = {}
    for nm, c in f.comps.items():
        terms = {}
        for s in f.src.names:
            if s in params:
                continue
            dc = c.partial(s)
            if not dc.is_zero():
                terms[s] = dc
        d_comp[nm] = Form.one_form(f.src, terms)
    out = Form(f.src, omega.degree, {})
    names = f.dst.names
    for idx, coef in omega.terms.items():
        pulled = Form.function(f.src, f.pull_function(coef))
        for i in idx:
            pulled = pulled.wedge(d_comp[names[i]])
        out = out + pulled
    return out


def pull_metric_with_params(f: PolyMap, g: PolyMatrix, params) -> PolyMatrix:
    """Metric pullback along a parametric family; parameter rows and columns
    of the result are zero."""
    params = set(params)
    jac = f.jacobian()
    z = LaurentPoly.zero(f.src)
    cols = [f.src.index(nm) for nm in params]
    trimmed = PolyMatrix(
        f.src,
        [
            [z if b in cols else jac.entries[a][b] for b in range(f.src.dim)]
            for a in range(jac.rows)
        ],
    )
    pulled = g.substitute(f.comps, f.src)
    return trimmed.transpose() @ pulled @ trimmed


def sym2(a: Form, b: Form) -> PolyMatrix:
    """Matrix of the symmetric product a . b = (a x b + b x a)/2 of 1-forms."""
    if a.degree != 1 or b.degree != 1 or a.chart != b.chart:
        raise ValueError("sym2 needs two 1-forms on one chart")
    chart = a.chart
    dim = chart.dim
    half = Fraction(1, 2)
    z = LaurentPoly.zero(chart)
    av = [a.terms.get((i,), z) for i in range(dim)]
    bv = [b.terms.get((i,), z) for i in range(dim)]
    return PolyMatrix(
        chart,
        [[(av[i] * bv[j] + av[j] * bv[i]) * half for j in range(dim)] for i in range(dim)],
    )


def tensor2(a: Form, b: Form) -> PolyMatrix:
    """Matrix of the plain tensor product a x b of 1-forms."""
    if a.degree != 1 or b.degree != 1 or a.chart != b.chart:
        raise ValueError("tensor2 needs two 1-forms on one chart")
    chart = a.chart
    dim = chart.dim
    z = LaurentPoly.zero(chart)
    av = [a.terms.get((i,), z) for i in range(dim)]
    bv = [b.terms.get((i,), z) for i in range(dim)]
    return PolyMatrix(chart, [[av[i] * bv[j] for j in range(dim)] for i in range(dim)])


class PolyMap:
    """Map between charts with Laurent-polynomial components.

    components: for each coordinate name of the target chart, its expression
    in the source chart.  An explicit inverse (when supplied) enables exact
    pushforward of vector fields.
    """

    __slots__ = ("src", "dst", "comps", "inverse_map")

    def __init__(
        self,
        src: Chart,
        dst: Chart,
        comps: Mapping[str, LaurentPoly],
        inverse: "PolyMap | None" = None,
    ):
        self.src = src
        self.dst = dst
        self.comps = {}
        for nm in dst.names:
            if nm not in comps:
                raise ValueError(f"missing component for {nm}")
            c = comps[nm]
            if c.chart != src:
                raise ValueError(f"component {nm} not over source chart")
            self.comps[nm] = c
        self.inverse_map = inverse
        if inverse is not None and (inverse.src != dst or inverse.dst != src):
            raise ValueError("inverse charts do not match")

    def pull_function(self, f: LaurentPoly) -> LaurentPoly:
        if f.chart != self.dst:
            raise ValueError("function not over target chart")
        return f.substitute(self.comps, self.src)

    def pull_form(self, omega: Form) -> Form:
        if omega.chart != self.dst:
            raise ValueError("form not over target chart")
        # differentials of the components
        d_comp = {nm: Form.function(self.src, c).d() for nm, c in self.comps.items()}
        out = Form(self.src, omega.degree, {})
        names = self.dst.names
        for idx, coef in omega.terms.items():
            pulled = Form.function(self.src, self.pull_function(coef))
            for i in idx:
                pulled = pulled.wedge(d_comp[names[i]])
            out = out + pulled
        return out

    def pull_metric(self, g: PolyMatrix) -> PolyMatrix:
        """J^T (g o F) J with J the Jacobian of the map."""
        if g.chart != self.dst:
            raise ValueError("metric not over target chart")
        jac = self.jacobian()
        pulled = g.substitute(self.comps, self.src)
        return jac.transpose() @ pulled @ jac

    def jacobian(self) -> PolyMatrix:
        """Rows: target coordinates; columns: source coordinates."""
        return PolyMatrix(
            self.src,
            [
                [self.comps[nm].partial(s) for s in self.src.names]
                for nm in self.dst.names
            ],
        )

    def push_field(self, x: VectorField) -> VectorField:
        """(F_* X)^a = (J^a_b X^b) o F^{-1}; needs the explicit inverse."""
        if self.inverse_map is None:
            raise ValueError("pushforward needs an explicit inverse map")
        if x.chart != self.src:
            raise ValueError("field not over source chart")
        jac = self.jacobian()
        comps = []
        for a in range(self.dst.dim):
            acc = LaurentPoly.zero(self.src)
            for b in range(self.src.dim):
                if not x.comps[b].is_zero():
                    acc = acc + jac.entries[a][b] * x.comps[b]
            comps.append(acc.substitute(self.inverse_map.comps, self.dst))
        return VectorField(self.dst, comps)

    def compose(self, other: "PolyMap") -> "PolyMap":
        """self o other (apply other first)."""
        if other.dst != self.src:
            raise ValueError("charts do not compose")
        comps = {nm: c.substitute(other.comps, other.src) for nm, c in self.comps.items()}
        inv = None
        if self.inverse_map is not None and other.inverse_map is not None:
            inv = other.inverse_map.compose(self.inverse_map)
        return PolyMap(other.src, self.dst, comps, inverse=inv)

    @staticmethod
    def identity(chart: Chart) -> "PolyMap":
        comps = {nm: LaurentPoly.variable(chart, nm) for nm in chart.names}
        m = PolyMap(chart, chart, comps)
        m.inverse_map = m
        return m
