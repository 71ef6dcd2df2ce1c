"""The (2n+1)-dimensional contact phase space of thermodynamics.

Chart (x0, p1..pn, x1..xn), contact form theta = dx0 + sum p_l dx^l, Reeb
field d/dx0, the canonical horizontal frame, the indefinite phase-space
metric G = 2 dp . dx + theta (x) theta, its almost-contact tensor, the
Killing catalog, and the constitutive hypersurface x0 + sum p_l x^l = 0
with its Gibbs-Duhem pairing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .curvature import MetricSpec, gram_matrix, lie_derivative_metric
from .fields import Form, VectorField, bracket, sym2, tensor2, wedge_all
from .linalg import PolyMatrix, kernel_exact
from .poly import Chart, LaurentPoly


def tps_chart(n: int) -> Chart:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Chart(["x0"] + [f"p{i}" for i in range(1, n + 1)] + [f"x{i}" for i in range(1, n + 1)])


def contact_form(n: int) -> Form:
    chart = tps_chart(n)
    coeffs = {"x0": LaurentPoly.one(chart)}
    for l in range(1, n + 1):
        coeffs[f"x{l}"] = LaurentPoly.variable(chart, f"p{l}")
    return Form.one_form(chart, coeffs)


def reeb_field(n: int) -> VectorField:
    return VectorField.coordinate(tps_chart(n), "x0")


def canonical_frame(n: int) -> dict:
    """xi, P_l = d/dp_l, X_i = d/dx^i - p_i d/dx0 (theta-horizontal lifts)."""
    chart = tps_chart(n)
    xi = VectorField.coordinate(chart, "x0")
    P = [VectorField.coordinate(chart, f"p{l}") for l in range(1, n + 1)]
    X = []
    for i in range(1, n + 1):
        X.append(
            VectorField.from_dict(
                chart, {f"x{i}": 1, "x0": -LaurentPoly.variable(chart, f"p{i}")}
            )
        )
    return {"xi": xi, "P": P, "X": X}


class TPS:
    """Bundle of the basic objects; cheap to build, all exact."""

    __slots__ = ("n", "chart", "theta", "reeb", "frame")

    def __init__(self, n: int):
        self.n = n
        self.chart = tps_chart(n)
        self.theta = contact_form(n)
        self.reeb = reeb_field(n)
        self.frame = canonical_frame(n)

    def frame_list(self) -> list[VectorField]:
        return [self.frame["xi"], *self.frame["P"], *self.frame["X"]]


def build(n: int) -> TPS:
    return TPS(n)


def phase_metric(n: int) -> MetricSpec:
    """G = 2 dp . dx + theta (x) theta; inverse supplied in closed form."""
    chart = tps_chart(n)
    z = LaurentPoly.zero(chart)
    one = LaurentPoly.one(chart)
    d = chart.dim

    def p(i):
        return LaurentPoly.variable(chart, f"p{i}")

    g = [[z] * d for _ in range(d)]
    g[0][0] = one
    for i in range(1, n + 1):
        xi_idx = chart.index(f"x{i}")
        pi_idx = chart.index(f"p{i}")
        g[0][xi_idx] = p(i)
        g[xi_idx][0] = p(i)
        g[pi_idx][xi_idx] = g[pi_idx][xi_idx] + one
        g[xi_idx][pi_idx] = g[xi_idx][pi_idx] + one
        for j in range(1, n + 1):
            xj_idx = chart.index(f"x{j}")
            g[xi_idx][xj_idx] = g[xi_idx][xj_idx] + p(i) * p(j)

    ginv = [[z] * d for _ in range(d)]
    ginv[0][0] = one
    for i in range(1, n + 1):
        xi_idx = chart.index(f"x{i}")
        pi_idx = chart.index(f"p{i}")
        ginv[0][pi_idx] = -p(i)
        ginv[pi_idx][0] = -p(i)
        ginv[pi_idx][xi_idx] = one
        ginv[xi_idx][pi_idx] = one

    return MetricSpec(f"tps-metric-n{n}", chart, PolyMatrix(chart, g), PolyMatrix(chart, ginv))


def metric_identity_check(n: int) -> bool:
    """Expand 2 sum dp_l . dx^l + theta (x) theta and compare with the matrix."""
    chart = tps_chart(n)
    theta = contact_form(n)
    acc = tensor2(theta, theta)
    for l in range(1, n + 1):
        acc = acc + sym2(Form.d_coord(chart, f"p{l}"), Form.d_coord(chart, f"x{l}")).scale(2)
    return acc == phase_metric(n).g


def contact_volume(n: int) -> tuple[Form, Fraction]:
    """theta ^ (dtheta)^n; returns the form and its constant coefficient in
    the chart-ordered coordinate volume."""
    theta = contact_form(n)
    omega = theta.d()
    top = theta
    for _ in range(n):
        top = top.wedge(omega)
    chart = theta.chart
    vol = wedge_all([Form.d_coord(chart, nm) for nm in chart.names])
    (vol_idx,) = vol.terms
    coef = top.terms.get(vol_idx, LaurentPoly.zero(chart))
    if len(top.terms) > 1 or not coef.is_constant():
        raise ArithmeticError("contact volume is not a constant multiple of the coordinate volume")
    return top, coef.constant_value()


def reeb_pinning(n: int) -> dict:
    """ker(dtheta) on the chart is 1-dimensional and spanned by d/dx0, and
    theta normalizes it to 1; dtheta has constant coefficients, so this is a
    pure rational kernel computation."""
    chart = tps_chart(n)
    theta = contact_form(n)
    omega = theta.d()
    d = chart.dim
    rows = []
    for b in range(d):
        row = []
        for a in range(d):
            c = omega.terms.get((a, b) if a < b else (b, a), LaurentPoly.zero(chart))
            v = c.constant_value() if c.is_constant() else None
            if v is None:
                raise ArithmeticError("dtheta coefficients are not constant")
            row.append(v if a < b else -v)
        rows.append(row)
    basis = kernel_exact(rows, ncols=d)
    ok = len(basis) == 1 and basis[0] == [Fraction(1)] + [Fraction(0)] * (d - 1)
    return {"kernel_dimension": len(basis), "spans_reeb": ok, "passed": ok}


def frame_commutator_table(n: int) -> dict:
    """All frame commutators vanish except [P_i, X_i] = -xi."""
    t = build(n)
    xi, P, X = t.frame["xi"], t.frame["P"], t.frame["X"]
    labeled = [("xi", xi)] + [(f"P{i+1}", P[i]) for i in range(n)] + [
        (f"X{i+1}", X[i]) for i in range(n)
    ]
    failures = []
    for a, (la, fa) in enumerate(labeled):
        for lb, fb in labeled[a + 1:]:
            br = bracket(fa, fb)
            if la.startswith("P") and lb.startswith("X") and la[1:] == lb[1:]:
                expect = xi.scale(-1)
            else:
                expect = VectorField.zero(t.chart)
            if br != expect:
                failures.append((la, lb))
    return {"failures": failures, "passed": not failures}


def symplectic_gram_on_horizontal(n: int) -> dict:
    """dtheta Gram on span(P, X): omega(P_i, X_j) = delta, omega(P,P) =
    omega(X,X) = 0."""
    t = build(n)
    omega = t.theta.d()
    P, X = t.frame["P"], t.frame["X"]
    ok = True
    for i in range(n):
        for j in range(n):
            ok &= omega(P[i], X[j]) == (1 if i == j else 0)
            ok &= omega(P[i], P[j]).is_zero()
            ok &= omega(X[i], X[j]).is_zero()
    return {"passed": bool(ok)}


def frame_gram(n: int) -> PolyMatrix:
    t = build(n)
    return gram_matrix(phase_metric(n), t.frame_list())


def expected_frame_gram(n: int) -> PolyMatrix:
    chart = tps_chart(n)
    d = chart.dim
    grid = [[0] * d for _ in range(d)]
    grid[0][0] = 1
    for i in range(1, n + 1):
        grid[i][n + i] = 1
        grid[n + i][i] = 1
    return PolyMatrix.from_scalars(chart, grid)


# ----------------------------------------------------------------------
# signature split and light cone


def signature_split(n: int) -> tuple[list[tuple[VectorField, Fraction]], list[tuple[VectorField, Fraction]]]:
    """Orthogonal split: plus-part (xi and v_l = (P_l + X_l)/2), minus-part
    (w_l = (P_l - X_l)/2).  Each field is paired with its exact squared norm;
    normalizing by 1/sqrt|norm| would give Gram diag(+1 x (n+1), -1 x n)."""
    t = build(n)
    g = phase_metric(n)
    half = Fraction(1, 2)
    plus = [(t.frame["xi"], g.inner(t.frame["xi"], t.frame["xi"]).constant_value())]
    minus = []
    for l in range(n):
        v = (t.frame["P"][l] + t.frame["X"][l]).scale(half)
        w = (t.frame["P"][l] - t.frame["X"][l]).scale(half)
        plus.append((v, g.inner(v, v).constant_value()))
        minus.append((w, g.inner(w, w).constant_value()))
    return plus, minus


def split_report(n: int) -> dict:
    plus, minus = signature_split(n)
    g = phase_metric(n)
    fields = [f for f, _ in plus] + [f for f, _ in minus]
    norms = [q for _, q in plus] + [q for _, q in minus]
    ok = all(q > 0 for _, q in plus) and all(q < 0 for _, q in minus)
    ok &= len(plus) == n + 1 and len(minus) == n
    for i in range(len(fields)):
        for j in range(i + 1, len(fields)):
            ok &= g.inner(fields[i], fields[j]).is_zero()
    # rescaled Gram: diagonal q/|q| = sign(q), off-diagonal already exactly 0
    normalized = [1 if q > 0 else -1 for q in norms]
    ok &= normalized == [1] * (n + 1) + [-1] * n
    return {"normalized_diagonal": normalized, "passed": bool(ok)}


def light_cone_class(n: int, x: VectorField, point: Mapping) -> str:
    q = phase_metric(n).inner(x, x).evaluate(point)
    if q > 0:
        return "positive"
    if q < 0:
        return "negative"
    return "null"


# ----------------------------------------------------------------------
# almost contact structure


def almost_contact_tensor(n: int) -> PolyMatrix:
    """(1,1)-tensor phi with phi(xi) = 0, phi(X_i) = P_i, phi(P_k) = -X_k;
    matrix acts on component columns."""
    chart = tps_chart(n)
    z = LaurentPoly.zero(chart)
    m = [[z] * chart.dim for _ in range(chart.dim)]
    for i in range(1, n + 1):
        pi, xi_ = chart.index(f"p{i}"), chart.index(f"x{i}")
        # phi(d/dp_i) = -X_i = -d/dx^i + p_i d/dx0
        m[0][pi] = LaurentPoly.variable(chart, f"p{i}")
        m[xi_][pi] = LaurentPoly.constant(chart, -1)
        # phi(d/dx^i) = d/dp_i
        m[pi][xi_] = LaurentPoly.one(chart)
    return PolyMatrix(chart, m)


def apply_matrix_field(m: PolyMatrix, x: VectorField) -> VectorField:
    chart = x.chart
    comps = []
    for a in range(chart.dim):
        acc = LaurentPoly.zero(chart)
        for b in range(chart.dim):
            if not m.entries[a][b].is_zero() and not x.comps[b].is_zero():
                acc = acc + m.entries[a][b] * x.comps[b]
        comps.append(acc)
    return VectorField(chart, comps)


def compatibility_check(n: int) -> dict:
    """phi^2 = -I + theta (x) xi; the modified pairing law
    G(phi A, phi B) = -G(A, B) + theta(A) theta(B) holds on all frame pairs;
    the classical law G(phi A, phi B) = G(A, B) - theta(A) theta(B) fails,
    with (X1, P1) as witness.  Also rank(phi) = 2n."""
    t = build(n)
    chart = t.chart
    g = phase_metric(n)
    phi = almost_contact_tensor(n)
    theta = t.theta

    # phi^2 + I - theta (x) xi == 0
    theta_xi = PolyMatrix(
        chart,
        [
            [
                (theta.terms.get((b,), LaurentPoly.zero(chart)) if a == 0 else LaurentPoly.zero(chart))
                for b in range(chart.dim)
            ]
            for a in range(chart.dim)
        ],
    )
    phi_sq_ok = (phi @ phi) + PolyMatrix.identity(chart, chart.dim) - theta_xi
    phi_sq_ok = phi_sq_ok.is_zero()

    phi_reeb_zero = apply_matrix_field(phi, t.reeb).is_zero()

    theta_phi_zero = all(
        theta(apply_matrix_field(phi, VectorField.coordinate(chart, nm))).is_zero()
        for nm in chart.names
    )

    frame = t.frame_list()
    modified_ok = True
    for a in frame:
        for b in frame:
            lhs = g.inner(apply_matrix_field(phi, a), apply_matrix_field(phi, b))
            rhs = -g.inner(a, b) + theta(a) * theta(b)
            modified_ok &= lhs == rhs
    # matrix form of the same law: phi^T G phi + G - theta theta^T = 0
    modified_matrix_ok = (
        (phi.transpose() @ g.g @ phi) + g.g - tensor2(theta, theta)
    ).is_zero()

    x1, p1 = t.frame["X"][0], t.frame["P"][0]
    witness_lhs = g.inner(apply_matrix_field(phi, x1), apply_matrix_field(phi, p1))
    witness_rhs = g.inner(x1, p1) - theta(x1) * theta(p1)
    classical_fails = witness_lhs != witness_rhs

    # rank phi = 2n everywhere: ker phi = span(xi) follows from phi(xi) = 0
    # together with phi^2 = -I + theta(x)xi (any kernel vector V satisfies
    # V = theta(V) xi); det phi = 0 confirms rank < 2n+1
    from .linalg import bareiss_det

    rank_ok = phi_sq_ok and phi_reeb_zero and bareiss_det(phi).is_zero()

    passed = bool(
        phi_sq_ok
        and phi_reeb_zero
        and theta_phi_zero
        and modified_ok
        and modified_matrix_ok
        and classical_fails
        and rank_ok
    )
    return {
        "phi_squared_ok": bool(phi_sq_ok),
        "phi_reeb_zero": bool(phi_reeb_zero),
        "theta_phi_zero": bool(theta_phi_zero),
        "modified_law_ok": bool(modified_ok and modified_matrix_ok),
        "classical_law_fails": bool(classical_fails),
        "classical_witness": (str(witness_lhs), str(witness_rhs)),
        "rank_phi": 2 * n if rank_ok else None,
        "passed": passed,
    }


# ----------------------------------------------------------------------
# Killing catalog


def killing_catalog(n: int) -> list[tuple[str, VectorField]]:
    """Generators of the isometry algebra of the phase metric, dimension
    n^2 + 2n + 1: the Reeb field, A_i = x^i d/dx0 - d/dp_i, B_j = -d/dx^j,
    and Q^k_l = p_l d/dp_k - x^k d/dx^l."""
    chart = tps_chart(n)

    def x(i):
        return LaurentPoly.variable(chart, f"x{i}")

    def p(i):
        return LaurentPoly.variable(chart, f"p{i}")

    out: list[tuple[str, VectorField]] = [("xi", VectorField.coordinate(chart, "x0"))]
    for i in range(1, n + 1):
        out.append((f"A{i}", VectorField.from_dict(chart, {"x0": x(i), f"p{i}": -1})))
    for j in range(1, n + 1):
        out.append((f"B{j}", VectorField.from_dict(chart, {f"x{j}": -1})))
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            out.append(
                (f"Q{k}_{l}", VectorField.from_dict(chart, {f"p{k}": p(l), f"x{l}": -x(k)}))
            )
    return out


def catalog_hamiltonians(n: int) -> dict[str, LaurentPoly]:
    """Contact Hamiltonian H_X = theta(X) for every catalog generator."""
    theta = contact_form(n)
    return {label: theta(field) for label, field in killing_catalog(n)}


def catalog_killing_report(n: int) -> dict:
    g = phase_metric(n)
    bad = [label for label, field in killing_catalog(n) if not lie_derivative_metric(g, field).is_zero()]
    count = len(killing_catalog(n))
    return {
        "count": count,
        "expected_count": n * n + 2 * n + 1,
        "non_killing": bad,
        "passed": not bad and count == n * n + 2 * n + 1,
    }


# ----------------------------------------------------------------------
# constitutive hypersurface


class ConstitutiveHypersurface:
    """x0 + sum p_l x^l = 0 with its tangent distribution and Gibbs-Duhem
    pairing sum x^i dp_i."""

    __slots__ = ("n", "chart", "defining", "theta", "gibbs_duhem")

    def __init__(self, n: int):
        self.n = n
        self.chart = tps_chart(n)
        f = LaurentPoly.variable(self.chart, "x0")
        for l in range(1, n + 1):
            f = f + LaurentPoly.variable(self.chart, f"p{l}") * LaurentPoly.variable(
                self.chart, f"x{l}"
            )
        self.defining = f
        self.theta = contact_form(n)
        gd = {}
        for i in range(1, n + 1):
            gd[f"p{i}"] = LaurentPoly.variable(self.chart, f"x{i}")
        self.gibbs_duhem = Form.one_form(self.chart, gd)

    def member(self, point: Mapping) -> bool:
        return self.defining.evaluate(point) == 0

    def generators(self) -> list[tuple[str, VectorField]]:
        chart = self.chart
        out = []
        for l in range(1, self.n + 1):
            out.append(
                (
                    f"X{l}",
                    VectorField.from_dict(
                        chart, {f"x{l}": 1, "x0": -LaurentPoly.variable(chart, f"p{l}")}
                    ),
                )
            )
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                out.append(
                    (
                        f"P{i}_{j}",
                        VectorField.from_dict(
                            chart,
                            {
                                f"p{i}": LaurentPoly.variable(chart, f"x{j}"),
                                f"p{j}": -LaurentPoly.variable(chart, f"x{i}"),
                            },
                        ),
                    )
                )
        return out

    def generator_report(self) -> dict:
        """Each generator is tangent to the hypersurface, theta-horizontal,
        and annihilated by the Gibbs-Duhem 1-form - all identically."""
        rows = {}
        ok = True
        for label, v in self.generators():
            tangent = v.apply(self.defining).is_zero()
            horizontal = self.theta(v).is_zero()
            gd_zero = self.gibbs_duhem(v).is_zero()
            rows[label] = {"tangent": tangent, "horizontal": horizontal, "gibbs_duhem_zero": gd_zero}
            ok &= tangent and horizontal and gd_zero
        return {"generators": rows, "passed": bool(ok)}

    def differential_identity(self) -> bool:
        """theta + sum x^i dp_i = d(defining function), globally."""
        lhs = self.theta + self.gibbs_duhem
        return lhs == Form.function(self.chart, self.defining).d()

    def point_report(self, point: Mapping) -> dict:
        member = self.member(point)
        exceptional = all(
            LaurentPoly.variable(self.chart, f"x{i}").evaluate(point) == 0
            for i in range(1, self.n + 1)
        )
        note = (
            "exceptional plane x = 0: the generator distribution degenerates there"
            if exceptional
            else ""
        )
        return {"member": member, "exceptional": exceptional, "note": note}


def constitutive_hypersurface(n: int) -> ConstitutiveHypersurface:
    return ConstitutiveHypersurface(n)
