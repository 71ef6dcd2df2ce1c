"""Contact phase space: form, metric, frames, signature, almost contact
structure, Killing catalog, constitutive hypersurface."""

from fractions import Fraction

import pytest

from tpsgeo.curvature import lie_derivative_metric
from tpsgeo.fields import VectorField
from tpsgeo.linalg import matrix_inverse_exact
from tpsgeo.poly import LaurentPoly
from tpsgeo import tps


class TestContactForm:
    def setup_method(self):
        self.t = tps.build(2)

    def test_reeb_pairing(self):
        assert self.t.theta(self.t.reeb) == 1

    def test_horizontal_frame_annihilated(self):
        for v in self.t.frame["P"] + self.t.frame["X"]:
            assert self.t.theta(v).is_zero()

    def test_coordinate_field_pairing(self):
        dx2 = VectorField.coordinate(self.t.chart, "x2")
        assert self.t.theta(dx2) == LaurentPoly.variable(self.t.chart, "p2")

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_reeb_pinning(self, n):
        rep = tps.reeb_pinning(n)
        assert rep["passed"] and rep["kernel_dimension"] == 1

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_contact_volume_constant(self, n):
        import math

        _, coef = tps.contact_volume(n)
        assert coef == Fraction(math.factorial(n) * (-1) ** (n * (n - 1) // 2))


class TestPhaseMetric:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_determinant(self, n):
        assert tps.phase_metric(n).det == LaurentPoly.constant(
            tps.tps_chart(n), Fraction((-1) ** n)
        )

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_identity_with_tensor_expansion(self, n):
        assert tps.metric_identity_check(n)

    @pytest.mark.parametrize("n", [1, 2])
    def test_closed_form_inverse_matches_adjugate(self, n):
        m = tps.phase_metric(n)
        inv, _det = matrix_inverse_exact(m.g)
        assert inv == m.g_inv

    def test_inverse_blocks_n2(self):
        m = tps.phase_metric(2)
        c = m.chart
        i_x0, i_p1, i_x1 = c.index("x0"), c.index("p1"), c.index("x1")
        assert m.g_inv.entries[i_x0][i_x0] == 1
        assert m.g_inv.entries[i_x0][i_p1] == -LaurentPoly.variable(c, "p1")
        assert m.g_inv.entries[i_x0][i_x1].is_zero()
        assert m.g_inv.entries[i_p1][i_x1] == 1
        assert m.g_inv.entries[i_x1][i_x1].is_zero()


class TestFramesAndSplit:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_commutators(self, n):
        assert tps.frame_commutator_table(n)["passed"]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_symplectic_gram(self, n):
        assert tps.symplectic_gram_on_horizontal(n)["passed"]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_signature_split(self, n):
        rep = tps.split_report(n)
        assert rep["passed"]
        assert rep["normalized_diagonal"] == [1] * (n + 1) + [-1] * n

    def test_split_norm_values(self):
        plus, minus = tps.signature_split(2)
        assert [q for _, q in plus] == [1, Fraction(1, 2), Fraction(1, 2)]
        assert [q for _, q in minus] == [Fraction(-1, 2), Fraction(-1, 2)]

    def test_light_cone_examples(self):
        n = 1
        t = tps.build(n)
        pt = {"x0": 0, "p1": 3, "x1": -2}
        xi, P1, X1 = t.frame["xi"], t.frame["P"][0], t.frame["X"][0]
        assert tps.light_cone_class(n, xi, pt) == "positive"
        assert tps.light_cone_class(n, (P1 - X1).scale(Fraction(1, 2)), pt) == "negative"
        null = xi + P1 - X1.scale(Fraction(1, 2))
        assert tps.light_cone_class(n, null, pt) == "null"
        # P and X alone are null too
        assert tps.light_cone_class(n, P1, pt) == "null"
        assert tps.light_cone_class(n, X1, pt) == "null"


class TestAlmostContact:
    @pytest.mark.parametrize("n", [1, 2])
    def test_compatibility(self, n):
        rep = tps.compatibility_check(n)
        assert rep["passed"]
        assert rep["rank_phi"] == 2 * n
        assert rep["classical_law_fails"]

    def test_witness_values(self):
        rep = tps.compatibility_check(1)
        lhs, rhs = rep["classical_witness"]
        assert lhs == "-1" and rhs == "1"

    def test_phi_action_on_frame(self):
        n = 2
        t = tps.build(n)
        phi = tps.almost_contact_tensor(n)
        assert tps.apply_matrix_field(phi, t.reeb).is_zero()
        for i in range(n):
            assert tps.apply_matrix_field(phi, t.frame["X"][i]) == t.frame["P"][i]
            assert tps.apply_matrix_field(phi, t.frame["P"][i]) == t.frame["X"][i].scale(-1)


class TestKillingCatalog:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_all_catalog_fields_are_killing(self, n):
        rep = tps.catalog_killing_report(n)
        assert rep["passed"]
        assert rep["count"] == n * n + 2 * n + 1

    def test_flipped_a_field_is_not_killing(self):
        # the same field with +d/dp_i instead of -d/dp_i fails
        n = 1
        g = tps.phase_metric(n)
        c = g.chart
        bad = VectorField.from_dict(c, {"x0": LaurentPoly.variable(c, "x1"), "p1": 1})
        assert not lie_derivative_metric(g, bad).is_zero()

    def test_hamiltonians(self):
        n = 2
        h = tps.catalog_hamiltonians(n)
        c = tps.tps_chart(n)

        def var(nm):
            return LaurentPoly.variable(c, nm)

        assert h["xi"] == LaurentPoly.one(c)
        for j in range(1, n + 1):
            assert h[f"A{j}"] == var(f"x{j}")
            assert h[f"B{j}"] == -var(f"p{j}")
        for k in range(1, n + 1):
            for l in range(1, n + 1):
                assert h[f"Q{k}_{l}"] == -var(f"x{k}") * var(f"p{l}")


class TestConstitutiveHypersurface:
    def setup_method(self):
        self.h = tps.constitutive_hypersurface(2)

    def test_membership(self):
        assert self.h.member({"x0": -2, "p1": 1, "x1": 2, "p2": 0, "x2": 7})
        assert not self.h.member({"x0": 1, "p1": 1, "x1": 2, "p2": 0, "x2": 7})

    def test_generator_count(self):
        # n theta-horizontal lifts plus n(n-1)/2 rotations
        assert len(self.h.generators()) == 2 + 1

    def test_generator_report(self):
        rep = self.h.generator_report()
        assert rep["passed"]
        assert set(rep["generators"]) == {"X1", "X2", "P1_2"}

    def test_differential_identity(self):
        assert self.h.differential_identity()
        assert tps.constitutive_hypersurface(3).differential_identity()

    def test_point_report_exceptional(self):
        rep = self.h.point_report({"x0": 0, "p1": 5, "x1": 0, "p2": -1, "x2": 0})
        assert rep["member"] and rep["exceptional"] and "exceptional" in rep["note"]
        rep2 = self.h.point_report({"x0": -2, "p1": 1, "x1": 2, "p2": 0, "x2": 7})
        assert rep2["member"] and not rep2["exceptional"] and rep2["note"] == ""
