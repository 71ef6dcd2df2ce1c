"""Symplectization of the contact phase space: tautological form, lifted
metric, canonical frame, isometry catalog with its sl(n+2) picture, complex
structure on the cone, scaling action, projectivization charts and cells,
incidence quadric, and the affine-group symplectomorphism.

Chart: (p_0..p_n, x^0..x^n) with every p-symbol invertible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .curvature import (
    MetricSpec,
    covariant_derivative,
    lie_derivative_metric,
    ricci_scalar,
)
from .fields import (
    Form,
    PolyMap,
    VectorField,
    bracket,
    pull_form_with_params,
    pull_metric_with_params,
    wedge_all,
)
from .linalg import PolyMatrix, rref_fraction, solve_exact
from .poly import Chart, LaurentPoly
from . import tps
from .killing import structure_constants

HALF = Fraction(1, 2)


def sympl_chart(n: int) -> Chart:
    names = [f"p{i}" for i in range(n + 1)] + [f"x{i}" for i in range(n + 1)]
    return Chart(names, invertible=[f"p{i}" for i in range(n + 1)])


def _theta_on(chart: Chart, n: int) -> Form:
    terms = {}
    for i in range(n + 1):
        terms[f"x{i}"] = LaurentPoly.variable(chart, f"p{i}")
    return Form.one_form(chart, terms)


def tautological_form(n: int) -> Form:
    return _theta_on(sympl_chart(n), n)


def symplectic_form(n: int) -> Form:
    return tautological_form(n).d()


def _metric_on(chart: Chart, n: int) -> PolyMatrix:
    # sized to the chart, so extra parameter symbols get zero rows/columns
    z = LaurentPoly.zero(chart)
    d = chart.dim
    g = [[z] * d for _ in range(d)]
    for i in range(n + 1):
        xi = chart.index(f"x{i}")
        g[chart.index(f"p{i}")][xi] = LaurentPoly.one(chart)
        g[xi][chart.index(f"p{i}")] = LaurentPoly.one(chart)
        for j in range(n + 1):
            g[xi][chart.index(f"x{j}")] = LaurentPoly.variable(
                chart, f"p{i}"
            ) * LaurentPoly.variable(chart, f"p{j}")
    return PolyMatrix(chart, g)


def sympl_metric(n: int) -> MetricSpec:
    """G-tilde = 2 sum dp_i . dx^i + (sum p_i dx^i)^2; closed-form inverse."""
    chart = sympl_chart(n)
    z = LaurentPoly.zero(chart)
    d = 2 * (n + 1)
    inv = [[z] * d for _ in range(d)]
    for i in range(n + 1):
        inv[sympl_index(chart, "p", i)][sympl_index(chart, "x", i)] = LaurentPoly.one(chart)
        inv[sympl_index(chart, "x", i)][sympl_index(chart, "p", i)] = LaurentPoly.one(chart)
        for j in range(n + 1):
            inv[sympl_index(chart, "p", i)][sympl_index(chart, "p", j)] = -(
                LaurentPoly.variable(chart, f"p{i}") * LaurentPoly.variable(chart, f"p{j}")
            )
    return MetricSpec(f"sympl-{n}", chart, _metric_on(chart, n), PolyMatrix(chart, inv))


def sympl_index(chart: Chart, kind: str, i: int) -> int:
    return chart.index(f"{kind}{i}")


class Sympl:
    """Bundle of the symplectization objects for one n."""

    __slots__ = ("n", "chart", "theta", "omega", "metric")

    def __init__(self, n: int):
        self.n = n
        self.chart = sympl_chart(n)
        self.theta = tautological_form(n)
        self.omega = self.theta.d()
        self.metric = sympl_metric(n)


def build(n: int) -> Sympl:
    return Sympl(n)


def volume_report(n: int) -> dict:
    """omega^{n+1}/(n+1)! equals the product of the dp_i ^ dx^i planes; its
    coefficient in the chart-ordered volume is the exact Pfaffian sign."""
    s = build(n)
    top = s.omega
    for _ in range(n):
        top = top.wedge(s.omega)
    fact = 1
    for k in range(2, n + 2):
        fact *= k
    top = top.scale(Fraction(1, fact))
    pairwise = wedge_all(
        [
            Form.d_coord(s.chart, f"p{i}").wedge(Form.d_coord(s.chart, f"x{i}"))
            for i in range(n + 1)
        ]
    )
    chart_vol = wedge_all([Form.d_coord(s.chart, nm) for nm in s.chart.names])
    (vol_idx,) = chart_vol.terms
    coef = top.terms.get(vol_idx, LaurentPoly.zero(s.chart))
    pfaffian_sign = coef.constant_value() if coef.is_constant() else None
    ok = top == pairwise and pfaffian_sign is not None and abs(pfaffian_sign) == 1
    return {
        "matches_pairwise_product": top == pairwise,
        "pfaffian_sign": pfaffian_sign,
        "nondegenerate": pfaffian_sign not in (None, 0),
        "passed": bool(ok),
    }


# ----------------------------------------------------------------------
# embedding of the contact phase space at p_0 = 1


def embedding(n: int) -> PolyMap:
    src = tps.tps_chart(n)
    dst = sympl_chart(n)
    comps = {"p0": LaurentPoly.one(src), "x0": LaurentPoly.variable(src, "x0")}
    for i in range(1, n + 1):
        comps[f"p{i}"] = LaurentPoly.variable(src, f"p{i}")
        comps[f"x{i}"] = LaurentPoly.variable(src, f"x{i}")
    return PolyMap(src, dst, comps)


def embedding_report(n: int) -> dict:
    j = embedding(n)
    s = build(n)
    theta_ok = j.pull_form(s.theta) == tps.contact_form(n)
    metric_ok = j.pull_metric(s.metric.g) == tps.phase_metric(n).g
    omega_ok = j.pull_form(s.omega) == tps.contact_form(n).d()
    return {
        "theta_pullback": theta_ok,
        "metric_pullback": metric_ok,
        "omega_pullback": omega_ok,
        "passed": theta_ok and metric_ok and omega_ok,
    }


def einstein_report(n: int) -> dict:
    m = sympl_metric(n)
    cur = ricci_scalar(m)
    factor = Fraction(n + 2, 2)
    einstein = cur.ricci == m.g.scale(factor)
    scalar_ok = cur.scalar == Fraction((n + 1) * (n + 2))
    det_ok = m.det == LaurentPoly.constant(m.chart, Fraction((-1) ** (n + 1)))
    return {
        "einstein_factor": factor if einstein else None,
        "scalar": cur.scalar,
        "scalar_expected": Fraction((n + 1) * (n + 2)),
        "det_sign_ok": det_ok,
        "passed": bool(einstein and scalar_ok and det_ok),
    }


# ----------------------------------------------------------------------
# canonical frame


def canonical_frame(n: int) -> dict:
    """P-tilde_i = p_i d/dp_i, L_k = p_k^{-1} d/dx^k, X-tilde_j = L_j - Phat,
    Phat = sum P-tilde_s / 2."""
    chart = sympl_chart(n)
    ptil = [
        VectorField.from_dict(chart, {f"p{i}": LaurentPoly.variable(chart, f"p{i}")})
        for i in range(n + 1)
    ]
    ell = [
        VectorField.from_dict(chart, {f"x{k}": LaurentPoly.variable(chart, f"p{k}", -1)})
        for k in range(n + 1)
    ]
    phat = VectorField.zero(chart)
    for f in ptil:
        phat = phat + f
    phat = phat.scale(HALF)
    xtil = [ell[j] - phat for j in range(n + 1)]
    return {"P": ptil, "L": ell, "X": xtil, "Phat": phat}


def frame_report(n: int) -> dict:
    fr = canonical_frame(n)
    g = sympl_metric(n)
    P, L, X, phat = fr["P"], fr["L"], fr["X"], fr["Phat"]
    ok = True
    for i in range(n + 1):
        for j in range(n + 1):
            delta = Fraction(1 if i == j else 0)
            ok &= bracket(P[i], P[j]).is_zero()
            ok &= bracket(L[i], L[j]).is_zero()
            ok &= bracket(P[i], L[j]) == L[j].scale(-delta)
            ok &= bracket(X[i], X[j]) == (X[j] - X[i]).scale(HALF)
            ok &= g.inner(P[i], P[j]).is_zero()
            ok &= g.inner(P[i], L[j]) == LaurentPoly.constant(g.chart, delta)
            ok &= g.inner(L[i], L[j]) == LaurentPoly.one(g.chart)
            ok &= g.inner(X[i], X[j]).is_zero()
            ok &= g.inner(X[i], P[j]) == LaurentPoly.constant(g.chart, delta)
        ok &= bracket(L[i], phat) == L[i].scale(HALF)
        ok &= g.inner(X[i], phat) == LaurentPoly.constant(g.chart, HALF)
    return {"passed": bool(ok)}


def null_cone_identity(n: int) -> dict:
    """For V = sum f_i P-tilde_i + g_i X-tilde_i with symbolic coefficients:
    G(V, V) = 2 sum f_i g_i, so V is null iff sum f_i g_i = 0."""
    base = sympl_chart(n)
    names = [f"f{i}" for i in range(n + 1)] + [f"g{i}" for i in range(n + 1)]
    chart = base.extend(names)
    fr = canonical_frame(n)
    v = VectorField.zero(chart)
    for i in range(n + 1):
        fi = LaurentPoly.variable(chart, f"f{i}")
        gi = LaurentPoly.variable(chart, f"g{i}")
        v = v + fr["P"][i].with_chart(chart).scale(fi) + fr["X"][i].with_chart(chart).scale(gi)
    gmat = _metric_on(chart, n)
    q = LaurentPoly.zero(chart)
    for a in range(chart.dim):
        if v.comps[a].is_zero():
            continue
        for b in range(chart.dim):
            if gmat.entries[a][b].is_zero() or v.comps[b].is_zero():
                continue
            q = q + v.comps[a] * gmat.entries[a][b] * v.comps[b]
    expect = LaurentPoly.zero(chart)
    for i in range(n + 1):
        expect = expect + LaurentPoly.variable(chart, f"f{i}") * LaurentPoly.variable(
            chart, f"g{i}"
        ) * 2
    return {"identity": q == expect, "passed": q == expect}


# ----------------------------------------------------------------------
# isometry catalog and its sl(n+2) picture


def killing_catalog(n: int) -> list[tuple[str, VectorField]]:
    """Q^i_j = x^i d/dx^j - p_j d/dp_i, X_s = d/dx^s,
    D^i = (x^i/2) Q + (1 - <x,p>/2) d/dp_i with Q = sum Q^s_s;
    (n+2)^2 - 1 generators in total."""
    chart = sympl_chart(n)

    def x(i):
        return LaurentPoly.variable(chart, f"x{i}")

    def p(i):
        return LaurentPoly.variable(chart, f"p{i}")

    out: list[tuple[str, VectorField]] = []
    for i in range(n + 1):
        for j in range(n + 1):
            out.append(
                (f"Q{i}_{j}", VectorField.from_dict(chart, {f"x{j}": x(i), f"p{i}": -p(j)}))
            )
    for s in range(n + 1):
        out.append((f"X{s}", VectorField.from_dict(chart, {f"x{s}": 1})))
    pairing = LaurentPoly.zero(chart)
    for s in range(n + 1):
        pairing = pairing + x(s) * p(s)
    for i in range(n + 1):
        comps = {f"p{i}": LaurentPoly.one(chart) - pairing * HALF}
        d = VectorField.from_dict(chart, comps)
        for s in range(n + 1):
            d = d + VectorField.from_dict(
                chart, {f"x{s}": x(i) * x(s) * HALF, f"p{s}": -(x(i) * p(s) * HALF)}
            )
        out.append((f"D{i}", d))
    return out


def catalog_report(n: int) -> dict:
    g = sympl_metric(n)
    cat = killing_catalog(n)
    bad = [label for label, f in cat if not lie_derivative_metric(g, f).is_zero()]
    expected = (n + 2) ** 2 - 1
    return {
        "count": len(cat),
        "expected_count": expected,
        "non_killing": bad,
        "passed": not bad and len(cat) == expected,
    }


def bracket_report(n: int) -> dict:
    """The printed relations: [Q^i_j, X_s] = -delta^i_s X_j,
    [Q^i_j, D^s] = delta^s_j D^i, [X_s, D^i] = (Q^i_s + delta^i_s Q)/2,
    [X, X] = [D, D] = 0, and the gl relations among the Q^i_j."""
    cat = dict(killing_catalog(n))
    chart = sympl_chart(n)
    zero = VectorField.zero(chart)
    qsum = zero
    for s in range(n + 1):
        qsum = qsum + cat[f"Q{s}_{s}"]
    ok = True
    rng = range(n + 1)
    for i in rng:
        for j in rng:
            q = cat[f"Q{i}_{j}"]
            for s in rng:
                ok &= bracket(q, cat[f"X{s}"]) == cat[f"X{j}"].scale(-1 if i == s else 0)
                ok &= bracket(q, cat[f"D{s}"]) == cat[f"D{i}"].scale(1 if s == j else 0)
            for k in rng:
                for l in rng:
                    expect = cat[f"Q{i}_{l}"].scale(1 if j == k else 0) - cat[
                        f"Q{k}_{j}"
                    ].scale(1 if l == i else 0)
                    ok &= bracket(q, cat[f"Q{k}_{l}"]) == expect
    for s in rng:
        for i in rng:
            expect = cat[f"Q{i}_{s}"].scale(HALF)
            if i == s:
                expect = expect + qsum.scale(HALF)
            ok &= bracket(cat[f"X{s}"], cat[f"D{i}"]) == expect
            ok &= bracket(cat[f"X{s}"], cat[f"X{i}"]).is_zero()
            ok &= bracket(cat[f"D{s}"], cat[f"D{i}"]).is_zero()
    return {"passed": bool(ok)}


def hamiltonian_report(n: int) -> dict:
    """i_X omega = dH with H_{Q^i_j} = -x^i p_j, H_{X_k} = -p_k,
    H_{D^s} = x^s (1 - <x,p>/2)."""
    s = build(n)
    chart = s.chart

    def x(i):
        return LaurentPoly.variable(chart, f"x{i}")

    def p(i):
        return LaurentPoly.variable(chart, f"p{i}")

    pairing = LaurentPoly.zero(chart)
    for k in range(n + 1):
        pairing = pairing + x(k) * p(k)
    expected: dict[str, LaurentPoly] = {}
    for i in range(n + 1):
        for j in range(n + 1):
            expected[f"Q{i}_{j}"] = -(x(i) * p(j))
        expected[f"X{i}"] = -p(i)
        expected[f"D{i}"] = x(i) * (LaurentPoly.one(chart) - pairing * HALF)
    bad = []
    for label, field in killing_catalog(n):
        h = Form.function(chart, expected[label])
        if s.omega.insert(field) != h.d():
            bad.append(label)
    return {"failures": bad, "passed": not bad}


# ----------------------------------------------------------------------
# sl(n+2) structure-constant comparison (complex matrices over Q(i))


def _czero(m: int):
    return (
        [[Fraction(0)] * m for _ in range(m)],
        [[Fraction(0)] * m for _ in range(m)],
    )


def _cmul(a, b):
    m = len(a[0])
    re = [[Fraction(0)] * m for _ in range(m)]
    im = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for k in range(m):
            ar, ai = a[0][i][k], a[1][i][k]
            if ar == 0 and ai == 0:
                continue
            for j in range(m):
                br, bi = b[0][k][j], b[1][k][j]
                if br == 0 and bi == 0:
                    continue
                re[i][j] += ar * br - ai * bi
                im[i][j] += ar * bi + ai * br
    return re, im


def _cbracket(a, b):
    ab = _cmul(a, b)
    ba = _cmul(b, a)
    m = len(a[0])
    return (
        [[ab[0][i][j] - ba[0][i][j] for j in range(m)] for i in range(m)],
        [[ab[1][i][j] - ba[1][i][j] for j in range(m)] for i in range(m)],
    )


def _flatten(c):
    out = []
    for grid in c:
        for row in grid:
            out.extend(row)
    return out


def sl_matrices(n: int) -> list[tuple[str, tuple]]:
    """The matrix picture in gl(n+2, C), in catalog label order:
    Q^i_j -> E_ij - tr/(n+2), X_s -> i E_{n+1,s}, D^l -> i E_{l,n+1}
    (the X and D images carry a hidden 1/sqrt(2) absorbed into the
    structure constants)."""
    m = n + 2
    out = []
    for i in range(n + 1):
        for j in range(n + 1):
            re, im = _czero(m)
            re[i][j] += 1
            if i == j:
                for k in range(m):
                    re[k][k] -= Fraction(1, m)
            out.append((f"Q{i}_{j}", (re, im)))
    for s in range(n + 1):
        re, im = _czero(m)
        im[m - 1][s] += 1
        out.append((f"X{s}", (re, im)))
    for l in range(n + 1):
        re, im = _czero(m)
        im[l][m - 1] += 1
        out.append((f"D{l}", (re, im)))
    return out


def sl_embedding_report(n: int) -> dict:
    """Structure constants of the catalog fields match those of the matrix
    picture after rescaling C^c_ab by 2^{(e_a + e_b - e_c)/2}, where e = 0 on
    the Q family and e = 1 on the X and D families (the sqrt(2) from the
    normalized embedding)."""
    cat = killing_catalog(n)
    labels = [label for label, _ in cat]
    c_fields = structure_constants([f for _, f in cat])

    mats = sl_matrices(n)
    assert [label for label, _ in mats] == labels
    vecs = [_flatten(mat) for _, mat in mats]
    ncols = len(vecs)
    a = [[vecs[j][i] for j in range(ncols)] for i in range(len(vecs[0]))]

    def exponent(label):
        return 0 if label.startswith("Q") else 1

    traceless = all(
        sum(mat[0][k][k] for k in range(n + 2)) == 0
        and sum(mat[1][k][k] for k in range(n + 2)) == 0
        for _, mat in mats
    )

    _, piv = rref_fraction([list(col) for col in zip(*a)])
    independent = len(piv) == ncols

    ok = True
    for ia in range(ncols):
        for ib in range(ncols):
            br = _flatten(_cbracket(mats[ia][1], mats[ib][1]))
            coeffs = solve_exact(a, br)
            if coeffs is None:
                ok = False
                continue
            for ic in range(ncols):
                e = exponent(labels[ia]) + exponent(labels[ib]) - exponent(labels[ic])
                expect = c_fields[ia][ib][ic]
                if expect != 0:
                    if e % 2 != 0:
                        ok = False
                        continue
                    expect = expect * (2 ** (e // 2))
                if coeffs[ic] != expect:
                    ok = False
    return {
        "traceless": traceless,
        "independent": independent,
        "brackets_match": bool(ok),
        "dimension": ncols,
        "passed": bool(traceless and independent and ok),
    }


# ----------------------------------------------------------------------
# complex structure on the cone over the contact phase space


def cone_chart(n: int) -> Chart:
    return Chart(("t",) + tps.tps_chart(n).names)


def cone_complex_structure(n: int) -> PolyMatrix:
    """J(d/dt) = -xi, J(xi) = d/dt, J(P_i) = -X_i, J(X_i) = P_i; acts on
    component columns over the cone chart (t, x0, p, x)."""
    chart = cone_chart(n)
    z = LaurentPoly.zero(chart)
    d = chart.dim
    m = [[z] * d for _ in range(d)]
    it, ix0 = chart.index("t"), chart.index("x0")
    m[ix0][it] = LaurentPoly.constant(chart, -1)
    m[it][ix0] = LaurentPoly.one(chart)
    for i in range(1, n + 1):
        ip, ix = chart.index(f"p{i}"), chart.index(f"x{i}")
        pi = LaurentPoly.variable(chart, f"p{i}")
        m[ix][ip] = LaurentPoly.constant(chart, -1)
        m[ix0][ip] = pi
        m[ip][ix] = LaurentPoly.one(chart)
        m[it][ix] = pi
    return PolyMatrix(chart, m)


def nijenhuis_report(n: int) -> dict:
    """J^2 = -I; the torsion N_J(A, B) = J^2[A,B] + [JA,JB] - J[JA,B] -
    J[A,JB] vanishes on every pair from (xi, X_i, P_j, d/dt).  Also the
    non-parallelism witnesses: -2 dtheta(phi X_1, X_1) theta(xi) = -2 and
    2 G((nabla_{X_1} phi) xi, X_1) = 1, and Ric(xi, xi) = -n/2."""
    chart = cone_chart(n)
    jm = cone_complex_structure(n)
    d = chart.dim
    j_squared_ok = (jm @ jm + PolyMatrix.identity(chart, d)).is_zero()

    t_base = tps.build(n)
    fields = [t_base.frame["xi"].with_chart(chart)]
    fields += [f.with_chart(chart) for f in t_base.frame["X"]]
    fields += [f.with_chart(chart) for f in t_base.frame["P"]]
    fields.append(VectorField.coordinate(chart, "t"))

    def j(v):
        return tps.apply_matrix_field(jm, v)

    failures = 0
    pairs = 0
    for a in range(len(fields)):
        for b in range(a, len(fields)):
            fa, fb = fields[a], fields[b]
            nj = (
                tps.apply_matrix_field(jm @ jm, bracket(fa, fb))
                + bracket(j(fa), j(fb))
                - j(bracket(j(fa), fb))
                - j(bracket(fa, j(fb)))
            )
            pairs += 1
            if not nj.is_zero():
                failures += 1

    # witnesses on the base
    g = tps.phase_metric(n)
    phi = tps.almost_contact_tensor(n)
    theta = t_base.theta
    x1 = t_base.frame["X"][0]
    omega = theta.d()
    witness_remark = (
        -2 * omega(tps.apply_matrix_field(phi, x1), x1) * theta(t_base.reeb)
    )
    # (nabla_{X_1} phi) xi  =  nabla_{X_1}(phi xi) - phi(nabla_{X_1} xi)
    nab = covariant_derivative(g, x1, tps.apply_matrix_field(phi, t_base.reeb)) - tps.apply_matrix_field(
        phi, covariant_derivative(g, x1, t_base.reeb)
    )
    witness_direct = 2 * g.inner(nab, x1)
    ric = ricci_scalar(g)
    ric_xi = ric.ricci.entries[g.chart.index("x0")][g.chart.index("x0")]

    ok = (
        j_squared_ok
        and failures == 0
        and witness_remark == LaurentPoly.constant(g.chart, -2)
        and witness_direct == LaurentPoly.one(g.chart)
        and ric_xi == LaurentPoly.constant(g.chart, Fraction(-n, 2))
    )
    return {
        "j_squared_minus_identity": j_squared_ok,
        "pairs_checked": pairs,
        "torsion_failures": failures,
        "remark_witness": str(witness_remark),
        "nonparallel_witness": str(witness_direct),
        "phi_parallel": False,
        "ricci_reeb": ric_xi.constant_value() if ric_xi.is_constant() else None,
        "passed": bool(ok),
    }


# ----------------------------------------------------------------------
# scaling (hyperbolic rotation) action


def hyperbolic_map(n: int) -> PolyMap:
    """(p, x) -> (lam p, lam^{-1} x) with lam a fresh invertible symbol."""
    chart = sympl_chart(n).extend(["lam"], invertible=["lam"])
    lam = LaurentPoly.variable(chart, "lam")
    lam_inv = LaurentPoly.variable(chart, "lam", -1)
    comps = {"lam": lam}
    for i in range(n + 1):
        comps[f"p{i}"] = lam * LaurentPoly.variable(chart, f"p{i}")
        comps[f"x{i}"] = lam_inv * LaurentPoly.variable(chart, f"x{i}")
    inv_comps = {"lam": lam}
    for i in range(n + 1):
        inv_comps[f"p{i}"] = lam_inv * LaurentPoly.variable(chart, f"p{i}")
        inv_comps[f"x{i}"] = lam * LaurentPoly.variable(chart, f"x{i}")
    inverse = PolyMap(chart, chart, inv_comps)
    return PolyMap(chart, chart, comps, inverse=inverse)


def hyperbolic_report(n: int) -> dict:
    """The scaling by a fixed nonzero lam preserves the tautological form,
    the symplectic form, and the metric; verified as exact identities in the
    symbolic scale, with lam frozen as a parameter.  At lam = 1 the map is
    the identity."""
    f = hyperbolic_map(n)
    chart = f.src
    theta = _theta_on(chart, n)
    g = _metric_on(chart, n)
    theta_ok = pull_form_with_params(f, theta, {"lam"}) == theta
    metric_ok = pull_metric_with_params(f, g, {"lam"}) == g
    omega_ok = pull_form_with_params(f, theta.d(), {"lam"}) == theta.d()
    ident = True
    for nm in chart.names:
        if nm == "lam":
            continue
        sub = f.comps[nm].substitute({"lam": LaurentPoly.one(chart)}, chart)
        ident &= sub == LaurentPoly.variable(chart, nm)
    return {
        "theta_invariant": theta_ok,
        "metric_invariant": metric_ok,
        "omega_invariant": omega_ok,
        "identity_at_one": ident,
        "passed": bool(theta_ok and metric_ok and omega_ok and ident),
    }


def hyperbolic_action_point(n: int, point: Mapping, lam) -> dict:
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("scale must be nonzero")
    out = {}
    for i in range(n + 1):
        out[f"p{i}"] = Fraction(point[f"p{i}"]) * lam
        out[f"x{i}"] = Fraction(point[f"x{i}"]) / lam
    return out


# ----------------------------------------------------------------------
# projectivization charts


def _localized_chart(n: int) -> Chart:
    names = sympl_chart(n).names
    return Chart(names, invertible=names)


def proj_chart_ids(n: int) -> list[tuple[str, int]]:
    """Fixed scan order: U_0..U_n then V_0..V_n."""
    return [("U", j) for j in range(n + 1)] + [("V", k) for k in range(n + 1)]


def proj_chart_functions(n: int, cid: tuple[str, int]) -> dict[str, LaurentPoly]:
    """Affine coordinates of the chart as Laurent monomials on the localized
    cone: U_j uses (x^i p_j; p_l/p_j, l != j), V_k uses (x^i/x^k, i != k;
    p_l x^k).  All are invariant under the scaling action."""
    kind, j = cid
    if not (0 <= j <= n):
        raise ValueError("chart index out of range")
    chart = _localized_chart(n)

    def mono(**exps):
        e = [0] * chart.dim
        for nm, k in exps.items():
            e[chart.index(nm)] = k
        return LaurentPoly(chart, {tuple(e): Fraction(1)})

    out = {}
    if kind == "U":
        for i in range(n + 1):
            out[f"xp{i}"] = mono(**{f"x{i}": 1, f"p{j}": 1})
        for l in range(n + 1):
            if l != j:
                out[f"pr{l}"] = mono(**{f"p{l}": 1, f"p{j}": -1})
    elif kind == "V":
        for i in range(n + 1):
            if i != j:
                out[f"xr{i}"] = mono(**{f"x{i}": 1, f"x{j}": -1})
        for l in range(n + 1):
            out[f"px{l}"] = mono(**{f"p{l}": 1, f"x{j}": 1})
    else:
        raise ValueError("chart kind must be U or V")
    return out


def proj_chart(n: int, point: Mapping) -> tuple[tuple[str, int], dict[str, Fraction]]:
    """First applicable chart in the fixed scan order, with the affine
    coordinates of the point; the zero point is rejected."""
    pt = {nm: Fraction(point[nm]) for nm in sympl_chart(n).names}
    if all(v == 0 for v in pt.values()):
        raise ValueError("zero point has no projectivization chart")
    for kind, j in proj_chart_ids(n):
        anchor = pt[f"p{j}"] if kind == "U" else pt[f"x{j}"]
        if anchor == 0:
            continue
        coords = {}
        for nm, f in proj_chart_functions(n, (kind, j)).items():
            coords[nm] = f.evaluate(pt)
        return (kind, j), coords
    raise ValueError("zero point has no projectivization chart")


def transition_relations(
    n: int, cid_a: tuple[str, int], cid_b: tuple[str, int]
) -> dict[str, dict[str, int]]:
    """Each coordinate of chart b as a Laurent monomial in the coordinates of
    chart a; exact on the overlap.  Solved from the exponent lattice and then
    verified as a monomial identity."""
    fa = proj_chart_functions(n, cid_a)
    fb = proj_chart_functions(n, cid_b)
    chart = _localized_chart(n)

    def expvec(f):
        ((e, _c),) = f.terms.items()
        return list(e)

    a_names = sorted(fa)
    a_rows = [expvec(fa[nm]) for nm in a_names]
    # columns of the solve are the a-coordinates
    mat = [[Fraction(a_rows[j][i]) for j in range(len(a_names))] for i in range(chart.dim)]
    out = {}
    for nm_b, f in fb.items():
        target = [Fraction(e) for e in expvec(f)]
        sol = solve_exact(mat, target)
        if sol is None:
            raise ValueError(f"no monomial transition for {nm_b}")
        rel = {}
        check = LaurentPoly.one(chart)
        for coef, nm_a in zip(sol, a_names):
            if coef == 0:
                continue
            if coef.denominator != 1:
                raise ValueError(f"non-integer exponent in transition for {nm_b}")
            rel[nm_a] = int(coef)
            check = check * fa[nm_a] ** int(coef)
        if check != f:
            raise ValueError(f"transition verification failed for {nm_b}")
        out[nm_b] = rel
    return out


def proj_report(n: int) -> dict:
    """Scaling invariance of every chart function (weight zero in the
    exponent lattice, plus a symbolic pullback check) and existence of exact
    monomial transitions for every ordered chart pair."""
    chart = _localized_chart(n)
    ext = chart.extend(["lam"], invertible=["lam"])
    comps = {"lam": LaurentPoly.variable(ext, "lam")}
    for i in range(n + 1):
        comps[f"p{i}"] = LaurentPoly.variable(ext, "lam") * LaurentPoly.variable(ext, f"p{i}")
        comps[f"x{i}"] = LaurentPoly.variable(ext, "lam", -1) * LaurentPoly.variable(
            ext, f"x{i}"
        )
    act = PolyMap(ext, ext, comps)
    invariant = True
    for cid in proj_chart_ids(n):
        for f in proj_chart_functions(n, cid).values():
            lifted = f.with_chart(ext)
            invariant &= act.pull_function(lifted) == lifted

    transitions_ok = True
    ids = proj_chart_ids(n)
    for a in ids:
        for b in ids:
            if a == b:
                continue
            try:
                transition_relations(n, a, b)
            except ValueError:
                transitions_ok = False

    # the printed example: on U_0 and U_1, (x^i p_1) = (x^i p_0) (p_1 / p_0)
    rel01 = transition_relations(n, ("U", 0), ("U", 1))
    example_ok = all(
        rel01[f"xp{i}"] == {f"xp{i}": 1, "pr1": 1} for i in range(n + 1)
    )
    return {
        "scaling_invariant": invariant,
        "all_transitions_monomial": transitions_ok,
        "u0_u1_example": example_ok,
        "passed": bool(invariant and transitions_ok and example_ok),
    }


# ----------------------------------------------------------------------
# cells


def cell_chart(n: int, k: int) -> Chart:
    """Coordinates on the cell {p_0 = .. = p_{k-1} = 0, p_k = 1}: the abelian
    block x^0..x^{k-1} first, then the contact block (x^k, p_{k+1}.., x^{k+1}..)."""
    names = [f"x{i}" for i in range(k)]
    names.append(f"x{k}")
    names += [f"p{l}" for l in range(k + 1, n + 1)]
    names += [f"x{i}" for i in range(k + 1, n + 1)]
    return Chart(names)


def cell_inclusion(n: int, k: int) -> PolyMap:
    src = cell_chart(n, k)
    dst = sympl_chart(n)
    comps = {}
    for l in range(n + 1):
        if l < k:
            comps[f"p{l}"] = LaurentPoly.zero(src)
        elif l == k:
            comps[f"p{l}"] = LaurentPoly.one(src)
        else:
            comps[f"p{l}"] = LaurentPoly.variable(src, f"p{l}")
    for i in range(n + 1):
        comps[f"x{i}"] = LaurentPoly.variable(src, f"x{i}")
    return PolyMap(src, dst, comps)


def cell_restrict(n: int, k: int) -> tuple[Form, PolyMatrix]:
    """theta_k = dx^k + sum_{i>k} p_i dx^i and the restricted metric G_k,
    both computed as exact pullbacks along the inclusion of the cell."""
    if not (0 <= k <= n):
        raise ValueError("cell index out of range")
    s = build(n)
    inc = cell_inclusion(n, k)
    return inc.pull_form(s.theta), inc.pull_metric(s.metric.g)


def cell_report(n: int, k: int) -> dict:
    """G_k is block-diagonal: zero on the abelian x^0..x^{k-1} directions and
    a copy of the contact phase-space metric of rank parameter n-k on the rest."""
    theta_k, g_k = cell_restrict(n, k)
    src = cell_chart(n, k)

    expect_terms = {f"x{k}": LaurentPoly.one(src)}
    for i in range(k + 1, n + 1):
        expect_terms[f"x{i}"] = LaurentPoly.variable(src, f"p{i}")
    theta_ok = theta_k == Form.one_form(src, expect_terms)

    m = n - k
    z = LaurentPoly.zero(src)
    expect = [[z] * src.dim for _ in range(src.dim)]
    if m == 0:
        # the contact block degenerates to the single direction dx^n . dx^n
        i = src.index(f"x{k}")
        expect[i][i] = LaurentPoly.one(src)
    else:
        base = tps.phase_metric(m).g
        tchart = tps.tps_chart(m)
        src_of = {"x0": f"x{k}"}
        for l in range(1, m + 1):
            src_of[f"p{l}"] = f"p{k+l}"
            src_of[f"x{l}"] = f"x{k+l}"
        rename = {nm: LaurentPoly.variable(src, target) for nm, target in src_of.items()}
        for a, nma in enumerate(tchart.names):
            for b, nmb in enumerate(tchart.names):
                ia = src.index(src_of[nma])
                ib = src.index(src_of[nmb])
                expect[ia][ib] = base.entries[a][b].substitute(rename, src)
    block_ok = g_k == PolyMatrix(src, expect)

    zero_rows_ok = all(
        all(g_k.entries[src.index(f"x{i}")][b].is_zero() for b in range(src.dim))
        for i in range(k)
    )
    return {
        "theta_matches": theta_ok,
        "block_structure": block_ok,
        "abelian_rows_zero": zero_rows_ok,
        "passed": bool(theta_ok and block_ok and zero_rows_ok),
    }


def cell_classify(n: int, point: Mapping) -> dict:
    """Least k with p_k != 0; the scaling with lam = 1/p_k moves the point
    onto the affine plane of cell k.  Points with all p_i = 0 belong to the
    degenerate stratum k = n+1, which carries no cell chart."""
    pt = {nm: Fraction(point[nm]) for nm in sympl_chart(n).names}
    for k in range(n + 1):
        if pt[f"p{k}"] != 0:
            lam = 1 / pt[f"p{k}"]
            moved = hyperbolic_action_point(n, pt, lam)
            return {"cell": k, "lam": lam, "representative": moved, "degenerate": False}
    return {"cell": n + 1, "lam": None, "representative": None, "degenerate": True}


# ----------------------------------------------------------------------
# incidence quadric


def incidence_quadric(n: int) -> LaurentPoly:
    chart = sympl_chart(n)
    q = LaurentPoly.zero(chart)
    for i in range(n + 1):
        q = q + LaurentPoly.variable(chart, f"p{i}") * LaurentPoly.variable(chart, f"x{i}")
    return q


def quadric_signature(n: int) -> tuple[int, int, int]:
    """Signature of sum p_i x^i: the polarization u_i = x^i + p_i,
    v_i = x^i - p_i diagonalizes it to (sum u_i^2 - v_i^2)/4."""
    chart = sympl_chart(n)
    q = incidence_quadric(n)
    diag = LaurentPoly.zero(chart)
    plus = minus = 0
    for i in range(n + 1):
        u = LaurentPoly.variable(chart, f"x{i}") + LaurentPoly.variable(chart, f"p{i}")
        v = LaurentPoly.variable(chart, f"x{i}") - LaurentPoly.variable(chart, f"p{i}")
        diag = diag + u * u - v * v
        plus += 1
        minus += 1
    if diag != q * 4:
        raise ArithmeticError("polarization identity failed")
    return plus, minus, 0


def ideal_gas_report(r=Fraction(2)) -> dict:
    """n = 2 with the thermodynamic naming (x^0, x^1, x^2) = (U, T, V) and
    (p_1, p_2) = (-S, p).  On the slice p_0 = 0 the incidence quadric reads
    -S T + p V = 0; fixing the entropy at the gas constant S = r turns it
    into the state equation p V = r T.  Sample points with p V = r T are
    members, and the scaling with lam = -1/S moves them into cell 1."""
    n = 2
    r = Fraction(r)
    q = incidence_quadric(n)

    def state_point(t, pres, vol, u=Fraction(7)):
        return {
            "p0": Fraction(0),
            "p1": -r,
            "p2": Fraction(pres),
            "x0": Fraction(u),
            "x1": Fraction(t),
            "x2": Fraction(vol),
        }

    members = []
    for t, pres, vol in [(3, r, 3), (5, 2 * r, Fraction(5, 2)), (Fraction(7, 2), r * 7, Fraction(1, 2))]:
        pt = state_point(t, pres, vol)
        members.append(q.evaluate(pt) == 0 and Fraction(pres) * Fraction(vol) == r * Fraction(t))
    non_member_pt = state_point(3, r, 4)
    non_member = q.evaluate(non_member_pt) != 0

    pt = state_point(3, r, 3)
    cls = cell_classify(n, pt)
    lam_ok = cls["cell"] == 1 and cls["lam"] == -1 / r
    moved = cls["representative"]
    moved_member = q.evaluate(moved) == 0 and moved["p1"] == 1

    passed = all(members) and non_member and lam_ok and moved_member
    return {
        "members_ok": all(members),
        "non_member_detected": non_member,
        "cell": cls["cell"],
        "lam": cls["lam"],
        "rescaled_member": moved_member,
        "passed": bool(passed),
    }


# ----------------------------------------------------------------------
# affine-group symplectomorphism


def affine_chart(n: int) -> Chart:
    names = [f"h{i}" for i in range(n + 1)] + [f"z{i}" for i in range(n + 1)]
    return Chart(names, invertible=[f"h{i}" for i in range(n + 1)])


def affine_map(n: int) -> PolyMap:
    """chi: (h, z) -> (p = h, x = -h^{-1} z), with exact inverse."""
    src = affine_chart(n)
    dst = sympl_chart(n)
    comps = {}
    for i in range(n + 1):
        comps[f"p{i}"] = LaurentPoly.variable(src, f"h{i}")
        comps[f"x{i}"] = -(
            LaurentPoly.variable(src, f"h{i}", -1) * LaurentPoly.variable(src, f"z{i}")
        )
    inv_comps = {}
    for i in range(n + 1):
        inv_comps[f"h{i}"] = LaurentPoly.variable(dst, f"p{i}")
        inv_comps[f"z{i}"] = -(
            LaurentPoly.variable(dst, f"p{i}") * LaurentPoly.variable(dst, f"x{i}")
        )
    inverse = PolyMap(dst, src, inv_comps)
    return PolyMap(src, dst, comps, inverse=inverse)


def affine_report(n: int) -> dict:
    """Exact pullback identities for the map (h, z) -> (p = h, x = -z/h):
    the tautological form pulls back to -sum(dz_i - z_i h_i^{-1} dh_i), the
    symplectic form to -sum h_i^{-1} dh_i ^ dz_i, and the right/left
    invariant fields push to p d/dp and -p^{-1} d/dx with the printed
    bracket relations."""
    chi = affine_map(n)
    src = chi.src
    s = build(n)

    pulled_theta = chi.pull_form(s.theta)
    expect_theta = Form(src, 1, {})
    for i in range(n + 1):
        zi = LaurentPoly.variable(src, f"z{i}")
        hinv = LaurentPoly.variable(src, f"h{i}", -1)
        expect_theta = expect_theta + Form.one_form(
            src, {f"z{i}": LaurentPoly.constant(src, -1), f"h{i}": zi * hinv}
        )
    theta_ok = pulled_theta == expect_theta
    # the other printed sign variant: -dz - z h^{-1} dh
    variant = Form(src, 1, {})
    for i in range(n + 1):
        zi = LaurentPoly.variable(src, f"z{i}")
        hinv = LaurentPoly.variable(src, f"h{i}", -1)
        variant = variant + Form.one_form(
            src, {f"z{i}": LaurentPoly.constant(src, -1), f"h{i}": -(zi * hinv)}
        )
    matches_variant = pulled_theta == variant

    pulled_omega = chi.pull_form(s.omega)
    expect_omega = Form(src, 2, {})
    for i in range(n + 1):
        hinv = Form.function(src, LaurentPoly.variable(src, f"h{i}", -1))
        term = hinv.wedge(Form.d_coord(src, f"h{i}")).wedge(Form.d_coord(src, f"z{i}"))
        expect_omega = expect_omega + term
    omega_sign_negative = pulled_omega == expect_omega.scale(-1)
    omega_sign_positive = pulled_omega == expect_omega

    push_ok = True
    bracket_ok = True
    for i in range(n + 1):
        hi = LaurentPoly.variable(src, f"h{i}")
        xi_a = VectorField.from_dict(src, {f"h{i}": hi, f"z{i}": LaurentPoly.variable(src, f"z{i}")})
        xi_z = VectorField.coordinate(src, f"z{i}")
        pa = chi.push_field(xi_a)
        pz = chi.push_field(xi_z)
        expect_pa = VectorField.from_dict(
            s.chart, {f"p{i}": LaurentPoly.variable(s.chart, f"p{i}")}
        )
        expect_pz = VectorField.from_dict(
            s.chart, {f"x{i}": -LaurentPoly.variable(s.chart, f"p{i}", -1)}
        )
        push_ok &= pa == expect_pa and pz == expect_pz
        bracket_ok &= bracket(xi_a, xi_z) == xi_z.scale(-1)
        eta_a = VectorField.from_dict(src, {f"h{i}": hi})
        eta_z = VectorField.from_dict(src, {f"z{i}": hi})
        bracket_ok &= bracket(eta_a, eta_z) == eta_z

    roundtrip = chi.inverse_map.compose(chi)
    ident_ok = all(
        roundtrip.comps[nm] == LaurentPoly.variable(src, nm) for nm in src.names
    )

    passed = bool(
        theta_ok
        and not matches_variant
        and omega_sign_negative
        and not omega_sign_positive
        and push_ok
        and bracket_ok
        and ident_ok
    )
    return {
        "theta_pullback_matches": theta_ok,
        "theta_matches_other_printed_sign": matches_variant,
        "omega_pullback_sign": "-" if omega_sign_negative else ("+" if omega_sign_positive else None),
        "pushforwards_ok": push_ok,
        "brackets_ok": bracket_ok,
        "roundtrip_identity": ident_ok,
        "passed": passed,
    }
