"""Symplectization: lifted metric, embedding, frame, isometries, cone
complex structure, scaling action, projectivization, cells, quadric, affine
symplectomorphism."""

from fractions import Fraction

import pytest

from tpsgeo.fields import Form
from tpsgeo.poly import LaurentPoly
from tpsgeo import sympl, tps

HALF = Fraction(1, 2)


class TestMetric:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_det_sign(self, n):
        m = sympl.sympl_metric(n)
        assert m.det == LaurentPoly.constant(m.chart, Fraction((-1) ** (n + 1)))

    def test_blocks_n1(self):
        m = sympl.sympl_metric(1)
        c = m.chart
        p0, p1 = LaurentPoly.variable(c, "p0"), LaurentPoly.variable(c, "p1")
        assert m.g.entries[c.index("p0")][c.index("p1")].is_zero()
        assert m.g.entries[c.index("p0")][c.index("x0")] == 1
        assert m.g.entries[c.index("x0")][c.index("x1")] == p0 * p1
        assert m.g_inv.entries[c.index("p0")][c.index("p1")] == -(p0 * p1)
        assert m.g_inv.entries[c.index("x0")][c.index("x1")].is_zero()

    @pytest.mark.parametrize("n", [1, 2])
    def test_christoffel_table_verbatim(self, n):
        got = sympl.sympl_metric(n).christoffel().nonzero()
        chart = sympl.sympl_chart(n)

        def p(i):
            return LaurentPoly.variable(chart, f"p{i}")

        expect = {}
        for i in range(n + 1):
            for j in range(n + 1):
                for k in range(n + 1):
                    # upper p_i, lower (p_j, x^k)
                    val = LaurentPoly.zero(chart)
                    if i == j:
                        val = val + p(k) * HALF
                    if j == k:
                        val = val + p(i) * HALF
                    if not val.is_zero():
                        expect[(f"p{i}", f"p{j}", f"x{k}")] = val
                    if j <= k:
                        expect[(f"p{i}", f"x{j}", f"x{k}")] = p(i) * p(j) * p(k)
                        xval = LaurentPoly.zero(chart)
                        if i == j:
                            xval = xval + p(k) * (-HALF)
                        if i == k:
                            xval = xval + p(j) * (-HALF)
                        if not xval.is_zero():
                            expect[(f"x{i}", f"x{j}", f"x{k}")] = xval
        assert got == expect

    @pytest.mark.parametrize("n", [1, 2])
    def test_einstein(self, n):
        rep = sympl.einstein_report(n)
        assert rep["passed"]
        assert rep["einstein_factor"] == Fraction(n + 2, 2)
        assert rep["scalar"] == (n + 1) * (n + 2)

    @pytest.mark.parametrize("n", [1, 2])
    def test_volume(self, n):
        rep = sympl.volume_report(n)
        assert rep["passed"]
        assert rep["pfaffian_sign"] == (-1) ** (n * (n + 1) // 2)


class TestEmbedding:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_pullbacks(self, n):
        assert sympl.embedding_report(n)["passed"]

    def test_theta_pullback_explicit(self):
        j = sympl.embedding(2)
        pulled = j.pull_form(sympl.build(2).theta)
        src = j.src
        assert pulled == Form.one_form(
            src,
            {
                "x0": LaurentPoly.one(src),
                "x1": LaurentPoly.variable(src, "p1"),
                "x2": LaurentPoly.variable(src, "p2"),
            },
        )


class TestFrame:
    @pytest.mark.parametrize("n", [1, 2])
    def test_report(self, n):
        assert sympl.frame_report(n)["passed"]

    def test_single_relations(self):
        from tpsgeo.fields import bracket

        fr = sympl.canonical_frame(2)
        g = sympl.sympl_metric(2)
        assert bracket(fr["P"][1], fr["L"][1]) == fr["L"][1].scale(-1)
        assert bracket(fr["X"][1], fr["X"][2]) == (fr["X"][2] - fr["X"][1]).scale(HALF)
        for i in range(3):
            for j in range(3):
                assert g.inner(fr["X"][i], fr["X"][j]).is_zero()

    @pytest.mark.parametrize("n", [1, 2])
    def test_null_cone(self, n):
        assert sympl.null_cone_identity(n)["passed"]


class TestIsometries:
    @pytest.mark.parametrize("n", [1, 2])
    def test_catalog(self, n):
        rep = sympl.catalog_report(n)
        assert rep["passed"]
        assert rep["count"] == (n + 2) ** 2 - 1

    @pytest.mark.parametrize("n", [1, 2])
    def test_brackets(self, n):
        assert sympl.bracket_report(n)["passed"]

    @pytest.mark.parametrize("n", [1, 2])
    def test_hamiltonians(self, n):
        assert sympl.hamiltonian_report(n)["passed"]

    def test_hamiltonian_translation_example(self):
        s = sympl.build(1)
        cat = dict(sympl.killing_catalog(1))
        h = Form.function(s.chart, -LaurentPoly.variable(s.chart, "p1"))
        assert s.omega.insert(cat["X1"]) == h.d()

    def test_d_fields_commute(self):
        from tpsgeo.fields import bracket

        cat = dict(sympl.killing_catalog(2))
        assert bracket(cat["D0"], cat["D1"]).is_zero()
        assert bracket(cat["D1"], cat["D2"]).is_zero()

    @pytest.mark.parametrize("n", [1, 2])
    def test_sl_embedding(self, n):
        rep = sympl.sl_embedding_report(n)
        assert rep["passed"]
        assert rep["dimension"] == (n + 2) ** 2 - 1


class TestConeComplexStructure:
    @pytest.mark.parametrize("n", [1, 2])
    def test_nijenhuis(self, n):
        rep = sympl.nijenhuis_report(n)
        assert rep["passed"]
        assert rep["pairs_checked"] == (2 * n + 2) * (2 * n + 3) // 2
        assert rep["remark_witness"] == "-2"
        assert rep["nonparallel_witness"] == "1"
        assert rep["ricci_reeb"] == Fraction(-n, 2)


class TestScalingAction:
    @pytest.mark.parametrize("n", [1, 2])
    def test_invariance(self, n):
        assert sympl.hyperbolic_report(n)["passed"]

    def test_point_action(self):
        pt = {"p0": 1, "p1": 2, "x0": 3, "x1": 4}
        out = sympl.hyperbolic_action_point(1, pt, Fraction(2))
        assert out == {
            "p0": Fraction(2),
            "p1": Fraction(4),
            "x0": Fraction(3, 2),
            "x1": Fraction(2),
        }
        with pytest.raises(ValueError):
            sympl.hyperbolic_action_point(1, pt, 0)


class TestProjectivization:
    def test_chart_selection_order(self):
        cid, coords = sympl.proj_chart(1, {"p0": 1, "p1": 0, "x0": 0, "x1": 0})
        assert cid == ("U", 0)
        assert coords == {"xp0": 0, "xp1": 0, "pr1": 0}
        cid, _ = sympl.proj_chart(1, {"p0": 0, "p1": 3, "x0": 1, "x1": 0})
        assert cid == ("U", 1)
        cid, _ = sympl.proj_chart(1, {"p0": 0, "p1": 0, "x0": 5, "x1": 1})
        assert cid == ("V", 0)

    def test_zero_point_rejected(self):
        with pytest.raises(ValueError):
            sympl.proj_chart(1, {"p0": 0, "p1": 0, "x0": 0, "x1": 0})

    def test_scaling_invariance_of_coordinates(self):
        pt = {"p0": 2, "p1": 3, "x0": Fraction(1, 2), "x1": -1}
        moved = sympl.hyperbolic_action_point(1, pt, Fraction(7, 3))
        cid_a, coords_a = sympl.proj_chart(1, pt)
        cid_b, coords_b = sympl.proj_chart(1, moved)
        assert cid_a == cid_b and coords_a == coords_b

    @pytest.mark.parametrize("n", [1, 2])
    def test_report(self, n):
        assert sympl.proj_report(n)["passed"]

    def test_u0_u1_transition_relation(self):
        rel = sympl.transition_relations(1, ("U", 0), ("U", 1))
        assert rel["xp0"] == {"xp0": 1, "pr1": 1}
        assert rel["xp1"] == {"xp1": 1, "pr1": 1}
        assert rel["pr0"] == {"pr1": -1}

    def test_transition_at_rational_point(self):
        n = 1
        pt = {"p0": 2, "p1": 5, "x0": 3, "x1": Fraction(-1, 2)}
        _, coords_a = sympl.proj_chart(n, pt)  # U0
        rel = sympl.transition_relations(n, ("U", 0), ("U", 1))
        derived = {}
        for nm, factors in rel.items():
            v = Fraction(1)
            for anm, e in factors.items():
                v *= coords_a[anm] ** e
            derived[nm] = v
        direct = {
            nm: f.evaluate(pt)
            for nm, f in sympl.proj_chart_functions(n, ("U", 1)).items()
        }
        assert derived == direct


class TestCells:
    @pytest.mark.parametrize("n,k", [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)])
    def test_block_structure(self, n, k):
        assert sympl.cell_report(n, k)["passed"]

    def test_cell0_is_base_metric(self):
        theta0, g0 = sympl.cell_restrict(2, 0)
        src = sympl.cell_chart(2, 0)
        assert src.names == tps.tps_chart(2).names
        base = tps.phase_metric(2)
        rename = {nm: LaurentPoly.variable(src, nm) for nm in base.chart.names}
        for a in range(5):
            for b in range(5):
                assert g0.entries[a][b] == base.g.entries[a][b].substitute(rename, src)

    def test_theta1_n2(self):
        theta1, g1 = sympl.cell_restrict(2, 1)
        src = sympl.cell_chart(2, 1)
        assert theta1 == Form.one_form(
            src, {"x1": LaurentPoly.one(src), "x2": LaurentPoly.variable(src, "p2")}
        )
        i0 = src.index("x0")
        assert all(g1.entries[i0][b].is_zero() for b in range(src.dim))

    def test_index_range(self):
        with pytest.raises(ValueError):
            sympl.cell_restrict(2, 3)
        with pytest.raises(ValueError):
            sympl.cell_restrict(2, -1)

    def test_classify(self):
        rep = sympl.cell_classify(2, {"p0": 0, "p1": 5, "p2": 1, "x0": 0, "x1": 2, "x2": 3})
        assert rep["cell"] == 1 and rep["lam"] == Fraction(1, 5)
        assert rep["representative"]["p1"] == 1
        deg = sympl.cell_classify(1, {"p0": 0, "p1": 0, "x0": 1, "x1": 0})
        assert deg["degenerate"] and deg["cell"] == 2


class TestQuadric:
    @pytest.mark.parametrize("n,expect", [(1, (2, 2, 0)), (2, (3, 3, 0)), (3, (4, 4, 0))])
    def test_signature(self, n, expect):
        assert sympl.quadric_signature(n) == expect

    def test_ideal_gas(self):
        rep = sympl.ideal_gas_report(Fraction(2))
        assert rep["passed"]
        assert rep["cell"] == 1
        assert rep["lam"] == Fraction(-1, 2)


class TestAffineGroup:
    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_report(self, n):
        rep = sympl.affine_report(n)
        assert rep["passed"]
        assert rep["theta_pullback_matches"]
        assert not rep["theta_matches_other_printed_sign"]
        assert rep["omega_pullback_sign"] == "-"

    def test_single_factor_pullback(self):
        chi = sympl.affine_map(0)
        src = chi.src
        pulled = chi.pull_form(sympl.build(0).theta)
        z0 = LaurentPoly.variable(src, "z0")
        h0inv = LaurentPoly.variable(src, "h0", -1)
        assert pulled == Form.one_form(
            src, {"z0": LaurentPoly.constant(src, -1), "h0": z0 * h0inv}
        )
