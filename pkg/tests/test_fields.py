"""Vector fields, exterior algebra, and polynomial maps."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tpsgeo.fields import Form, PolyMap, VectorField, bracket, sym2, tensor2, wedge_all
from tpsgeo.poly import Chart, LaurentPoly

CH = Chart(["x0", "p1", "x1"], invertible=["p1"])


def var(name, power=1):
    return LaurentPoly.variable(CH, name, power)


def coord(name):
    return VectorField.coordinate(CH, name)


class TestVectorFields:
    def test_apply(self):
        x = coord("p1")
        f = var("p1") * var("x1")
        assert x.apply(f) == var("x1")

    def test_bracket_coordinate_fields_commute(self):
        assert bracket(coord("p1"), coord("x1")).is_zero()

    def test_bracket_frozen(self):
        # [p d/dp, p^-1 d/dx] = -p^-1 d/dx  (scaling vs translation weight)
        p = var("p1")
        a = VectorField.from_dict(CH, {"p1": p})
        b = VectorField.from_dict(CH, {"x1": p.inverse()})
        assert bracket(a, b) == b.scale(-1)

    def test_bracket_antisymmetry_and_self(self):
        a = VectorField.from_dict(CH, {"x0": var("p1") ** 2, "x1": var("x0")})
        b = VectorField.from_dict(CH, {"p1": var("x1"), "x0": 1})
        assert bracket(a, b) == bracket(b, a).scale(-1)
        assert bracket(a, a).is_zero()


class TestForms:
    def test_d_squared_zero(self):
        f = Form.function(CH, var("x0") * var("p1") ** 2 + var("x1"))
        assert f.d().d().is_zero()

    def test_wedge_anticommutes(self):
        dp, dx = Form.d_coord(CH, "p1"), Form.d_coord(CH, "x1")
        assert dp.wedge(dx) == dx.wedge(dp).scale(-1)
        assert dp.wedge(dp).is_zero()

    def test_contact_top_form(self):
        # theta ^ dtheta = dx0 ^ dp1 ^ dx1 for theta = dx0 + p1 dx1
        theta = Form.one_form(CH, {"x0": 1, "x1": var("p1")})
        top = theta.wedge(theta.d())
        vol = wedge_all([Form.d_coord(CH, nm) for nm in ["x0", "p1", "x1"]])
        assert top == vol

    def test_insert(self):
        theta = Form.one_form(CH, {"x0": 1, "x1": var("p1")})
        assert theta(coord("x0")) == 1
        assert theta(coord("x1")) == var("p1")
        omega = theta.d()  # dp1 ^ dx1
        assert omega(coord("p1"), coord("x1")) == 1
        assert omega(coord("x1"), coord("p1")) == -1

    def test_evaluation_antisymmetry_binomial(self):
        omega = Form(CH, 2, {(0, 1): var("x1"), (1, 2): LaurentPoly.one(CH)})
        a = VectorField.from_dict(CH, {"x0": var("p1"), "p1": 1})
        b = VectorField.from_dict(CH, {"p1": var("x0"), "x1": 2})
        assert omega(a, b) == -omega(b, a)

    def test_lie_derivative_of_invariant_form(self):
        # translation in x0 preserves theta
        theta = Form.one_form(CH, {"x0": 1, "x1": var("p1")})
        assert theta.lie_derivative(coord("x0")).is_zero()
        # translation in p1 does not
        assert not theta.lie_derivative(coord("p1")).is_zero()

    def test_cartan_vs_definition_on_function(self):
        f = Form.function(CH, var("p1") * var("x1"))
        x = VectorField.from_dict(CH, {"p1": var("x0"), "x1": 1})
        assert f.lie_derivative(x).terms[()] == x.apply(var("p1") * var("x1"))

    def test_coefficient_sign(self):
        omega = Form(CH, 2, {(1, 2): LaurentPoly.one(CH)})
        assert omega.coefficient(["p1", "x1"]) == 1
        assert omega.coefficient(["x1", "p1"]) == -1


class TestTensors:
    def test_sym2_tensor2(self):
        dp, dx = Form.d_coord(CH, "p1"), Form.d_coord(CH, "x1")
        s = sym2(dp, dx)
        ip, ix = CH.index("p1"), CH.index("x1")
        assert s.entries[ip][ix] == Fraction(1, 2)
        assert s.entries[ix][ip] == Fraction(1, 2)
        t = tensor2(dp, dx)
        assert t.entries[ip][ix] == 1
        assert t.entries[ix][ip].is_zero()


class TestPolyMap:
    def setup_method(self):
        # scaling map (x0, p1, x1) -> (x0, 2 p1, x1 / 2) with exact inverse
        fwd = {
            "x0": var("x0"),
            "p1": 2 * var("p1"),
            "x1": var("x1") * Fraction(1, 2),
        }
        bwd = {
            "x0": var("x0"),
            "p1": var("p1") * Fraction(1, 2),
            "x1": 2 * var("x1"),
        }
        inv = PolyMap(CH, CH, bwd)
        self.m = PolyMap(CH, CH, fwd, inverse=inv)

    def test_pull_function(self):
        assert self.m.pull_function(var("p1") * var("x1")) == var("p1") * var("x1")

    def test_pull_form_preserves_contact_form(self):
        theta = Form.one_form(CH, {"x0": 1, "x1": var("p1")})
        assert self.m.pull_form(theta) == theta

    def test_pull_form_jacobian_consistency(self):
        # pullback of d(coordinate) = d(component)
        dx1 = Form.d_coord(CH, "x1")
        assert self.m.pull_form(dx1) == Form.one_form(CH, {"x1": Fraction(1, 2)})

    def test_push_field(self):
        # pushforward of d/dp1 under p -> 2p is 2 d/dp1
        assert self.m.push_field(coord("p1")) == coord("p1").scale(2)

    def test_push_bracket_homomorphism(self):
        a = VectorField.from_dict(CH, {"p1": var("x1"), "x0": 1})
        b = VectorField.from_dict(CH, {"x1": var("p1") ** 2})
        lhs = self.m.push_field(bracket(a, b))
        rhs = bracket(self.m.push_field(a), self.m.push_field(b))
        assert lhs == rhs

    def test_pull_metric(self):
        from tpsgeo.linalg import PolyMatrix

        g = PolyMatrix.identity(CH, 3)
        pulled = self.m.pull_metric(g)
        ip, ix = CH.index("p1"), CH.index("x1")
        assert pulled.entries[ip][ip] == 4
        assert pulled.entries[ix][ix] == Fraction(1, 4)

    def test_compose_with_inverse_is_identity(self):
        comp = self.m.inverse_map.compose(self.m)
        ident = PolyMap.identity(CH)
        assert comp.comps == ident.comps


# property test: d^2 = 0 and Cartan formula on random 1-forms

coeff_polys = st.dictionaries(
    st.tuples(
        st.integers(min_value=0, max_value=2),
        st.integers(min_value=-1, max_value=2),
        st.integers(min_value=0, max_value=2),
    ),
    st.integers(min_value=-3, max_value=3).map(Fraction),
    max_size=3,
).map(lambda d: LaurentPoly(CH, d))


@settings(max_examples=60, deadline=None)
@given(coeff_polys, coeff_polys, coeff_polys)
def test_d_squared_zero_random(a, b, c):
    alpha = Form(CH, 1, {(0,): a, (1,): b, (2,): c})
    assert alpha.d().d().is_zero()


@settings(max_examples=60, deadline=None)
@given(coeff_polys, coeff_polys)
def test_lie_derivative_commutes_with_d(a, b):
    alpha = Form(CH, 1, {(0,): a, (2,): b})
    x = VectorField.from_dict(CH, {"p1": b, "x1": a})
    lhs = alpha.d().lie_derivative(x)
    rhs = alpha.lie_derivative(x).d()
    assert lhs == rhs
