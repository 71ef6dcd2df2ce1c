"""Heisenberg group H_n over the rationals: group law, exponential map with
its nilpotent matrix-series oracle, the diffeomorphism chi onto the contact
phase space, translation actions, and the invariant-structure checks."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping, Sequence

from .fields import (
    Form,
    PolyMap,
    VectorField,
    bracket,
    pull_form_with_params,
    pull_metric_with_params,
)
from .killing import span_contains
from .linalg import PolyMatrix
from .poly import Chart, LaurentPoly
from . import tps

HALF = Fraction(1, 2)


def _vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


class HeisElement:
    """Group element (a, b, c); the group law appends <a, b1> to the center."""

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        self.a = _vec(a)
        self.b = _vec(b)
        self.c = Fraction(c)
        if len(self.a) != len(self.b):
            raise ValueError("a and b must have the same length")

    @property
    def n(self) -> int:
        return len(self.a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeisElement):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.c == other.c

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def __repr__(self) -> str:
        return f"HeisElement(a={list(self.a)}, b={list(self.b)}, c={self.c})"

    def to_json(self) -> str:
        return json.dumps(
            {
                "a": [str(x) for x in self.a],
                "b": [str(x) for x in self.b],
                "c": str(self.c),
            }
        )

    @staticmethod
    def from_json(s: str) -> "HeisElement":
        d = json.loads(s)
        return HeisElement(
            [Fraction(x) for x in d["a"]], [Fraction(x) for x in d["b"]], Fraction(d["c"])
        )


class HeisAlgElement:
    """Lie algebra element (a, b, z)."""

    __slots__ = ("a", "b", "z")

    def __init__(self, a, b, z):
        self.a = _vec(a)
        self.b = _vec(b)
        self.z = Fraction(z)
        if len(self.a) != len(self.b):
            raise ValueError("a and b must have the same length")

    @property
    def n(self) -> int:
        return len(self.a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeisAlgElement):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.z == other.z

    def __repr__(self) -> str:
        return f"HeisAlgElement(a={list(self.a)}, b={list(self.b)}, z={self.z})"


def identity(n: int) -> HeisElement:
    return HeisElement([0] * n, [0] * n, 0)


def multiply(g: HeisElement, g1: HeisElement) -> HeisElement:
    if g.n != g1.n:
        raise ValueError("dimension mismatch")
    return HeisElement(
        [x + y for x, y in zip(g.a, g1.a)],
        [x + y for x, y in zip(g.b, g1.b)],
        g.c + g1.c + _dot(g.a, g1.b),
    )


def inverse(g: HeisElement) -> HeisElement:
    return HeisElement([-x for x in g.a], [-x for x in g.b], -g.c + _dot(g.a, g.b))


def exp(x: HeisAlgElement) -> HeisElement:
    return HeisElement(x.a, x.b, x.z + HALF * _dot(x.a, x.b))


def log(g: HeisElement) -> HeisAlgElement:
    return HeisAlgElement(g.a, g.b, g.c - HALF * _dot(g.a, g.b))


# ----------------------------------------------------------------------
# matrix picture, used as an independent oracle


def element_matrix(g: HeisElement) -> list[list[Fraction]]:
    """Upper unitriangular (n+2) x (n+2) rendering: first row (1, a, c),
    middle block (I, b), corner 1."""
    n = g.n
    m = [[Fraction(1 if i == j else 0) for j in range(n + 2)] for i in range(n + 2)]
    for i in range(n):
        m[0][1 + i] = g.a[i]
        m[1 + i][n + 1] = g.b[i]
    m[0][n + 1] = g.c
    return m


def algebra_matrix(x: HeisAlgElement) -> list[list[Fraction]]:
    n = x.n
    m = [[Fraction(0)] * (n + 2) for _ in range(n + 2)]
    for i in range(n):
        m[0][1 + i] = x.a[i]
        m[1 + i][n + 1] = x.b[i]
    m[0][n + 1] = x.z
    return m


def _mat_mul(a, b):
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)
    ]


def exp_series_matrix(x: HeisAlgElement) -> list[list[Fraction]]:
    """I + M + M^2/2; the series terminates because M^3 = 0."""
    m = algebra_matrix(x)
    n = len(m)
    m2 = _mat_mul(m, m)
    out = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] += m[i][j] + HALF * m2[i][j]
    return out


def exp_matches_series(x: HeisAlgElement) -> bool:
    return element_matrix(exp(x)) == exp_series_matrix(x)


def multiply_matches_matrices(g: HeisElement, g1: HeisElement) -> bool:
    return element_matrix(multiply(g, g1)) == _mat_mul(element_matrix(g), element_matrix(g1))


# ----------------------------------------------------------------------
# the diffeomorphism chi onto the contact phase space


def chi(g: HeisElement) -> dict[str, Fraction]:
    """(a, b, c) -> (x0 = -c, p = b, x = a)."""
    out = {"x0": -g.c}
    for i in range(g.n):
        out[f"p{i+1}"] = g.b[i]
        out[f"x{i+1}"] = g.a[i]
    return out


def chi_inv(point: Mapping, n: int) -> HeisElement:
    return HeisElement(
        [Fraction(point[f"x{i+1}"]) for i in range(n)],
        [Fraction(point[f"p{i+1}"]) for i in range(n)],
        -Fraction(point["x0"]),
    )


def left_action(g: HeisElement, point: Mapping) -> dict[str, Fraction]:
    """chi o (left translation by g) o chi^{-1}; closed form
    (x0 - c - <a, p>, p + b, x + a)."""
    n = g.n
    via_group = chi(multiply(g, chi_inv(point, n)))
    p = [Fraction(point[f"p{i+1}"]) for i in range(n)]
    direct = {"x0": Fraction(point["x0"]) - g.c - _dot(g.a, p)}
    for i in range(n):
        direct[f"p{i+1}"] = p[i] + g.b[i]
        direct[f"x{i+1}"] = Fraction(point[f"x{i+1}"]) + g.a[i]
    if via_group != direct:
        raise ArithmeticError("left-action closed form disagrees with the group law")
    return direct


def right_action(g: HeisElement, point: Mapping) -> dict[str, Fraction]:
    """chi o (right translation by g) o chi^{-1}; closed form
    (x0 - c - <b, x>, p + b, x + a)."""
    n = g.n
    via_group = chi(multiply(chi_inv(point, n), g))
    x = [Fraction(point[f"x{i+1}"]) for i in range(n)]
    direct = {"x0": Fraction(point["x0"]) - g.c - _dot(g.b, x)}
    for i in range(n):
        direct[f"p{i+1}"] = Fraction(point[f"p{i+1}"]) + g.b[i]
        direct[f"x{i+1}"] = x[i] + g.a[i]
    if via_group != direct:
        raise ArithmeticError("right-action closed form disagrees with the group law")
    return direct


# ----------------------------------------------------------------------
# symbolic side: invariant fields, pullbacks, translation invariance


def group_chart(n: int) -> Chart:
    return Chart([f"a{i}" for i in range(1, n + 1)] + [f"b{i}" for i in range(1, n + 1)] + ["c"])


def chi_map(n: int) -> PolyMap:
    src = group_chart(n)
    dst = tps.tps_chart(n)
    comps = {"x0": -LaurentPoly.variable(src, "c")}
    for i in range(1, n + 1):
        comps[f"p{i}"] = LaurentPoly.variable(src, f"b{i}")
        comps[f"x{i}"] = LaurentPoly.variable(src, f"a{i}")
    inv_comps = {"c": -LaurentPoly.variable(dst, "x0")}
    for i in range(1, n + 1):
        inv_comps[f"b{i}"] = LaurentPoly.variable(dst, f"p{i}")
        inv_comps[f"a{i}"] = LaurentPoly.variable(dst, f"x{i}")
    return PolyMap(src, dst, comps, inverse=PolyMap(dst, src, inv_comps))


def right_invariant_fields(n: int) -> list[tuple[str, VectorField]]:
    """Generators of left translations: xi_Z = d/dc, xi_A_i = d/da_i + b_i d/dc,
    xi_B_j = d/db_j."""
    chart = group_chart(n)
    out = [("Z", VectorField.coordinate(chart, "c"))]
    for i in range(1, n + 1):
        out.append(
            (f"A{i}", VectorField.from_dict(chart, {f"a{i}": 1, "c": LaurentPoly.variable(chart, f"b{i}")}))
        )
    for j in range(1, n + 1):
        out.append((f"B{j}", VectorField.coordinate(chart, f"b{j}")))
    return out


def left_invariant_fields(n: int) -> list[tuple[str, VectorField]]:
    """Generators of right translations: eta_C = d/dc, eta_A_i = d/da_i,
    eta_B_j = d/db_j + a_j d/dc."""
    chart = group_chart(n)
    out = [("C", VectorField.coordinate(chart, "c"))]
    for i in range(1, n + 1):
        out.append((f"A{i}", VectorField.coordinate(chart, f"a{i}")))
    for j in range(1, n + 1):
        out.append(
            (f"B{j}", VectorField.from_dict(chart, {f"b{j}": 1, "c": LaurentPoly.variable(chart, f"a{j}")}))
        )
    return out


def theta_h(n: int) -> Form:
    """chi^* of the contact form: -dc + sum b_i da^i."""
    return chi_map(n).pull_form(tps.contact_form(n))


def invariant_report(n: int) -> dict:
    """Pushforwards of the invariant frames through chi, the pulled-back
    contact form and its invariance under right translations, the constant
    Gram matrix of the pulled-back metric, and the nilradical landing in the
    isometry span."""
    cm = chi_map(n)
    chart = group_chart(n)
    t = tps.build(n)

    th = theta_h(n)
    expect_terms = {"c": LaurentPoly.constant(chart, -1)}
    for i in range(1, n + 1):
        expect_terms[f"a{i}"] = LaurentPoly.variable(chart, f"b{i}")
    theta_ok = th == Form.one_form(chart, expect_terms)

    xi_fields = dict(right_invariant_fields(n))
    push_xi_ok = cm.push_field(xi_fields["Z"]) == t.reeb.scale(-1)
    for i in range(1, n + 1):
        push_xi_ok &= cm.push_field(xi_fields[f"A{i}"]) == t.frame["X"][i - 1]
        push_xi_ok &= cm.push_field(xi_fields[f"B{i}"]) == t.frame["P"][i - 1]

    eta_fields = dict(left_invariant_fields(n))
    lie_ok = all(th.lie_derivative(f).is_zero() for f in eta_fields.values())

    # Gram of the pulled-back metric in the right-invariant frame
    gh = cm.pull_metric(tps.phase_metric(n).g)
    order = ["Z"] + [f"A{i}" for i in range(1, n + 1)] + [f"B{j}" for j in range(1, n + 1)]
    gram = []
    constant = True
    for la in order:
        row = []
        for lb in order:
            va, vb = xi_fields[la], xi_fields[lb]
            acc = LaurentPoly.zero(chart)
            for ia in range(chart.dim):
                for ib in range(chart.dim):
                    if va.comps[ia].is_zero() or vb.comps[ib].is_zero():
                        continue
                    acc = acc + va.comps[ia] * gh.entries[ia][ib] * vb.comps[ib]
            constant &= acc.is_constant()
            row.append(acc.constant_value() if acc.is_constant() else None)
        gram.append(row)
    expect_gram = [[Fraction(0)] * (2 * n + 1) for _ in range(2 * n + 1)]
    expect_gram[0][0] = Fraction(1)
    for i in range(1, n + 1):
        expect_gram[i][n + i] = Fraction(1)
        expect_gram[n + i][i] = Fraction(1)
    gram_ok = constant and gram == expect_gram

    # eta pushforwards land in the isometry span (they are -xi, -B_i, -A_j)
    killing_span = [f for _, f in tps.killing_catalog(n)]
    push_eta = {label: cm.push_field(f) for label, f in eta_fields.items()}
    span_ok = all(span_contains(killing_span, f) for f in push_eta.values())
    eta_c_ok = push_eta["C"] == t.reeb.scale(-1)
    cat = dict(tps.killing_catalog(n))
    eta_exact_ok = all(
        push_eta[f"A{i}"] == cat[f"B{i}"].scale(-1) and push_eta[f"B{i}"] == cat[f"A{i}"].scale(-1)
        for i in range(1, n + 1)
    )

    # commutator consistency: [xi_A_i, xi_B_j] pushes to delta_ij * reeb
    comm_ok = True
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            br = bracket(xi_fields[f"A{i}"], xi_fields[f"B{j}"])
            comm_ok &= cm.push_field(br) == t.reeb.scale(1 if i == j else 0)

    passed = bool(
        theta_ok and push_xi_ok and lie_ok and gram_ok and span_ok and eta_c_ok and eta_exact_ok and comm_ok
    )
    return {
        "theta_h_matches": theta_ok,
        "xi_pushforwards": push_xi_ok,
        "right_translation_invariance": lie_ok,
        "gram_constant": constant,
        "gram_matches": gram_ok,
        "nilradical_in_isometry_span": span_ok,
        "eta_pushforwards_exact": eta_c_ok and eta_exact_ok,
        "commutator_consistency": comm_ok,
        "passed": passed,
    }


def translation_invariance_report(n: int) -> dict:
    """With a symbolic group element (ga, gb, gc): the right action preserves
    theta and G exactly; the left action does not (its theta pullback gains
    sum gb_i dx^i - sum ga_i dp_i)."""
    base = tps.tps_chart(n)
    params = [f"ga{i}" for i in range(1, n + 1)] + [f"gb{i}" for i in range(1, n + 1)] + ["gc"]
    ext = base.extend(params)

    def lift_theta():
        terms = {"x0": LaurentPoly.one(ext)}
        for i in range(1, n + 1):
            terms[f"x{i}"] = LaurentPoly.variable(ext, f"p{i}")
        return Form.one_form(ext, terms)

    def lift_metric():
        g = tps.phase_metric(n).g
        z = LaurentPoly.zero(ext)
        out = [[z] * ext.dim for _ in range(ext.dim)]
        for a, nma in enumerate(base.names):
            for b, nmb in enumerate(base.names):
                out[ext.index(nma)][ext.index(nmb)] = g.entries[a][b].with_chart(ext)
        return PolyMatrix(ext, out)

    theta = lift_theta()
    g = lift_metric()

    def action_map(kind):
        comps = {nm: LaurentPoly.variable(ext, nm) for nm in params}
        shift = LaurentPoly.variable(ext, "x0") - LaurentPoly.variable(ext, "gc")
        for i in range(1, n + 1):
            if kind == "right":
                shift = shift - LaurentPoly.variable(ext, f"gb{i}") * LaurentPoly.variable(
                    ext, f"x{i}"
                )
            else:
                shift = shift - LaurentPoly.variable(ext, f"ga{i}") * LaurentPoly.variable(
                    ext, f"p{i}"
                )
            comps[f"p{i}"] = LaurentPoly.variable(ext, f"p{i}") + LaurentPoly.variable(
                ext, f"gb{i}"
            )
            comps[f"x{i}"] = LaurentPoly.variable(ext, f"x{i}") + LaurentPoly.variable(
                ext, f"ga{i}"
            )
        comps["x0"] = shift
        return PolyMap(ext, ext, comps)

    right_map = action_map("right")
    left_map = action_map("left")
    right_theta_ok = pull_form_with_params(right_map, theta, params) == theta
    right_metric_ok = pull_metric_with_params(right_map, g, params) == g
    left_theta = pull_form_with_params(left_map, theta, params)
    defect = left_theta - theta
    expect_defect = Form(ext, 1, {})
    for i in range(1, n + 1):
        expect_defect = expect_defect + Form.one_form(
            ext,
            {
                f"x{i}": LaurentPoly.variable(ext, f"gb{i}"),
                f"p{i}": -LaurentPoly.variable(ext, f"ga{i}"),
            },
        )
    left_defect_ok = defect == expect_defect
    return {
        "right_preserves_theta": right_theta_ok,
        "right_preserves_metric": right_metric_ok,
        "left_theta_defect_matches": left_defect_ok,
        "passed": bool(right_theta_ok and right_metric_ok and left_defect_ok),
    }
