"""Tests for the structure-constant algebras, Miyamoto involutions and
group closure, and the bridge from the Fock engine."""

from fractions import Fraction as Q

import pytest

from griess_lab.axial import (
    AG3_LINES,
    LinearEndo,
    StructureAlgebra,
    adjoint,
    adjoint_eigenspaces,
    affine_central_charge,
    algebra_from_griess,
    as_automorphism,
    axis_vector,
    build_3C,
    build_G9,
    certify_virasoro,
    check_a_products,
    dump_algebra,
    group_closure,
    highest_weight_check,
    isomorphism_check,
    lie_algebra,
    line_sum_idempotent,
    load_algebra,
    miyamoto_sigma,
    miyamoto_tau,
    parafermion_central_charge,
    standard_frame,
    verify_automorphism,
)
from griess_lab.numerics import Matrix


def vsub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def vadd(*xs):
    return tuple(sum(col) for col in zip(*xs))


@pytest.fixture(scope="module")
def u3():
    return build_3C()


@pytest.fixture(scope="module")
def g9():
    return build_G9()


@pytest.fixture(scope="module")
def taus(g9):
    return {(i, j): miyamoto_tau(g9, axis_vector(g9, i, j))
            for i in range(3) for j in range(3)}


@pytest.fixture(scope="module")
def tau_group(taus):
    return group_closure([taus[(0, 0)], taus[(0, 1)], taus[(1, 0)]])


class TestStructureAlgebra:
    def test_rejects_noncommutative_table(self):
        table = [[[0, 0], [1, 0]], [[0, 1], [0, 0]]]
        gram = [[1, 0], [0, 1]]
        with pytest.raises(ValueError, match="not commutative"):
            StructureAlgebra(["x", "y"], table, gram)

    def test_rejects_asymmetric_gram(self):
        zero = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
        with pytest.raises(ValueError, match="not symmetric"):
            StructureAlgebra(["x", "y"], zero, [[1, 2], [0, 1]])

    def test_rejects_nonassociative_form(self):
        table = [[[0, 1], [0, 0]], [[0, 0], [0, 0]]]
        gram = [[1, 0], [0, 1]]
        with pytest.raises(ValueError, match="form not associative"):
            StructureAlgebra(["x", "y"], table, gram)

    def test_multiply_and_form(self, u3):
        e0, e1 = u3.unit(0), u3.unit(1)
        assert u3.multiply(e0, e0) == (Q(2), Q(0), Q(0))
        assert u3.multiply(e0, e1) == (Q(1, 32), Q(1, 32), Q(-1, 32))
        assert u3.form(e0, e0) == Q(1, 4)
        assert u3.form(e0, e1) == Q(1, 256)


class TestThreeAxes:
    def test_omega_central_charge(self, u3):
        omega = tuple(Q(32, 33) for _ in range(3))
        assert certify_virasoro(u3, omega) == Q(16, 11)

    def test_complement_of_one_axis(self, u3):
        omega = tuple(Q(32, 33) for _ in range(3))
        a = vsub(omega, u3.unit(0))
        assert certify_virasoro(u3, a) == Q(21, 22)
        assert u3.form(a, a) == Q(21, 44)
        assert not any(u3.multiply(u3.unit(0), a))

    def test_adjoint_spectrum(self, u3):
        spaces = adjoint_eigenspaces(u3, u3.unit(0))
        assert {lam: len(b) for lam, b in spaces.items()} == {
            Q(2): 1, Q(0): 1, Q(1, 16): 1}

    def test_difference_is_sixteenth_eigenvector(self, u3):
        v = vsub(u3.unit(1), u3.unit(2))
        ad = adjoint(u3, u3.unit(0))
        assert ad.apply(v) == tuple(Q(1, 16) * x for x in v)

    def test_tau_swaps_other_axes(self, u3):
        tau = miyamoto_tau(u3, u3.unit(0))
        assert tau.automorphism
        assert tau.apply(u3.unit(0)) == u3.unit(0)
        assert tau.apply(u3.unit(1)) == u3.unit(2)
        assert tau.apply(u3.unit(2)) == u3.unit(1)

    def test_sigma_is_identity(self, u3):
        sig = miyamoto_sigma(u3, u3.unit(0))
        assert sig.matrix == Matrix.identity(3)
        assert sig.automorphism

    def test_non_idempotent_rejected(self, u3):
        v = vadd(u3.unit(0), u3.unit(1))
        with pytest.raises(ValueError, match="not idempotent"):
            certify_virasoro(u3, v)


class TestNineAxes:
    def test_gram_determinant(self, g9):
        assert g9.gram.det() == Q(9, 32) * Q(63, 256) ** 8
        assert g9.gram.rank() == 9

    def test_omega_central_charge_and_identity(self, g9):
        omega = tuple(Q(8, 9) for _ in range(9))
        assert certify_virasoro(g9, omega) == Q(4)
        half = tuple(x / 2 for x in omega)
        for i in range(9):
            assert g9.multiply(half, g9.unit(i)) == g9.unit(i)

    def test_axis_vector_wraps_mod_three(self, g9):
        assert axis_vector(g9, 3, 4) == axis_vector(g9, 0, 1)
        assert axis_vector(g9, -1, -2) == axis_vector(g9, 2, 1)

    def test_line_idempotents(self, g9):
        for line in AG3_LINES:
            a = line_sum_idempotent(g9, line)
            assert certify_virasoro(g9, a) == Q(21, 22)
            assert g9.form(a, a) == Q(21, 44)

    def test_line_exchange_products(self, g9):
        report = check_a_products(g9)
        assert len(report) == 6
        assert all(report.values())

    def test_adjoint_spectrum_has_no_half(self, g9):
        spaces = adjoint_eigenspaces(g9, g9.unit(0))
        assert {lam: len(b) for lam, b in spaces.items()} == {
            Q(2): 1, Q(0): 4, Q(1, 16): 4}

    def test_standard_frame(self, g9):
        e00, a1, b1 = standard_frame(g9)
        assert certify_virasoro(g9, e00) == Q(1, 2)
        assert certify_virasoro(g9, a1) == Q(21, 22)
        assert certify_virasoro(g9, b1) == Q(28, 11)
        assert Q(1, 2) + Q(21, 22) + Q(28, 11) == Q(4)
        for x, y in ((e00, a1), (e00, b1), (a1, b1)):
            assert not any(g9.multiply(x, y))
        omega = tuple(Q(8, 9) for _ in range(9))
        assert vadd(e00, a1, b1) == omega


class TestHighestWeightVectors:
    def test_documented_triples(self, g9):
        frame = standard_frame(g9)
        a = [line_sum_idempotent(g9, line) for line in AG3_LINES]
        row = [[axis_vector(g9, i, j) for j in range(3)] for i in range(3)]
        cases = [
            (vsub(a[1], a[2]), (Q(0), Q(1, 11), Q(21, 11))),
            (vsub(row[0][1], row[0][2]), (Q(1, 16), Q(31, 16), Q(0))),
            (vsub(vadd(*row[1]), vadd(*row[2])),
             (Q(1, 16), Q(21, 176), Q(20, 11))),
            (vsub(vsub(row[1][1], row[2][2]), vsub(row[1][2], row[2][1])),
             (Q(1, 16), Q(5, 176), Q(21, 11))),
        ]
        for v, want in cases:
            assert highest_weight_check(g9, v, frame) == want

    def test_scaling_invariance(self, g9):
        frame = standard_frame(g9)
        v = vsub(axis_vector(g9, 0, 1), axis_vector(g9, 0, 2))
        w = tuple(Q(-7, 3) * x for x in v)
        assert highest_weight_check(g9, w, frame) == (Q(1, 16), Q(31, 16), Q(0))

    def test_rejects_non_eigenvector(self, g9):
        frame = standard_frame(g9)
        v = vadd(axis_vector(g9, 0, 1), axis_vector(g9, 0, 2))
        with pytest.raises(ValueError, match="simultaneous eigenvector"):
            highest_weight_check(g9, v, frame)

    def test_rejects_zero_vector(self, g9):
        frame = standard_frame(g9)
        with pytest.raises(ValueError, match="zero vector"):
            highest_weight_check(g9, tuple(Q(0) for _ in range(9)), frame)


class TestMiyamoto:
    def test_tau_fixes_its_axis_and_permutes_the_rest(self, g9):
        tau = miyamoto_tau(g9, g9.unit(0))
        assert tau.automorphism
        assert tau.apply(g9.unit(0)) == g9.unit(0)
        assert tau.apply(axis_vector(g9, 1, 1)) == axis_vector(g9, 2, 2)
        assert tau.apply(axis_vector(g9, 1, 2)) == axis_vector(g9, 2, 1)
        assert tau.apply(axis_vector(g9, 0, 1)) == axis_vector(g9, 0, 2)
        units = {g9.unit(i) for i in range(9)}
        assert {tau.apply(u) for u in units} == units

    def test_tau_is_an_involution(self, g9):
        tau = miyamoto_tau(g9, axis_vector(g9, 1, 2))
        assert tau.matrix != Matrix.identity(9)
        assert tau.matrix.matmul(tau.matrix) == Matrix.identity(9)

    def test_sigma_is_identity(self, g9):
        sig = miyamoto_sigma(g9, g9.unit(0))
        assert sig.matrix == Matrix.identity(9)
        assert sig.automorphism

    def test_rejects_wrong_central_charge(self, g9):
        omega = tuple(Q(8, 9) for _ in range(9))
        with pytest.raises(ValueError, match="central charge 1/2"):
            miyamoto_tau(g9, omega)
        with pytest.raises(ValueError, match="central charge 1/2"):
            miyamoto_sigma(g9, omega)

    def test_rejects_spectrum_outside_fusion_set(self):
        table = [[[2, 0], [0, Q(1, 3)]], [[0, Q(1, 3)], [1, 0]]]
        gram = [[Q(1, 4), 0], [0, Q(3, 4)]]
        odd = StructureAlgebra(["e", "x"], table, gram)
        assert certify_virasoro(odd, odd.unit(0)) == Q(1, 2)
        with pytest.raises(ValueError, match="eigenvalues outside"):
            miyamoto_tau(odd, odd.unit(0))


class TestGroupClosure:
    def test_order_eighteen(self, tau_group):
        assert tau_group.order == 18

    def test_shape_certificate(self, tau_group):
        assert tau_group.shape_certificate() == {
            "order": 18,
            "o3_size": 9,
            "o3_normal": True,
            "involutions": 9,
            "involutions_conjugate": True,
            "quotient_order": 2,
        }

    def test_all_nine_generate_the_same_group(self, taus, tau_group):
        full = group_closure(list(taus.values()))
        assert set(full.elements) == set(tau_group.elements)

    def test_commuting_order_three_products(self, taus, tau_group):
        g = taus[(0, 0)].compose(taus[(1, 0)])
        h = taus[(0, 0)].compose(taus[(0, 1)])
        assert tau_group.element_order(g.matrix) == 3
        assert tau_group.element_order(h.matrix) == 3
        assert g.matrix.matmul(h.matrix) == h.matrix.matmul(g.matrix)
        assert tau_group.element_order(Matrix.identity(9)) == 1

    def test_requires_verified_automorphisms(self, g9):
        raw = LinearEndo(Matrix.identity(9))
        with pytest.raises(ValueError, match="verified automorphisms"):
            group_closure([raw])

    def test_bound_is_enforced(self, taus):
        with pytest.raises(RuntimeError, match="exceeded bound"):
            group_closure([taus[(0, 0)], taus[(0, 1)], taus[(1, 0)]], bound=5)


class TestAutomorphismChecks:
    def test_translation_is_an_automorphism(self, g9):
        rows = [[Q(0)] * 9 for _ in range(9)]
        for i in range(3):
            for j in range(3):
                rows[3 * i + (j + 1) % 3][3 * i + j] = Q(1)
        m = Matrix(rows)
        assert verify_automorphism(g9, m)
        endo = as_automorphism(g9, m)
        assert endo.automorphism

    def test_transposition_is_not(self, g9):
        rows = [[Q(0)] * 9 for _ in range(9)]
        perm = [1, 0] + list(range(2, 9))
        for j, i in enumerate(perm):
            rows[i][j] = Q(1)
        m = Matrix(rows)
        assert not verify_automorphism(g9, m)
        with pytest.raises(ValueError, match="does not preserve"):
            as_automorphism(g9, m)


class TestIsomorphismCheck:
    def test_identity_map(self, g9, u3):
        assert isomorphism_check(g9, g9, list(range(9)))
        assert isomorphism_check(u3, u3, [0, 1, 2])

    def test_translation_relabeling(self, g9):
        perm = [3 * i + (j + 1) % 3 for i in range(3) for j in range(3)]
        assert isomorphism_check(g9, g9, perm)

    def test_bad_relabeling_detected(self, g9):
        assert not isomorphism_check(g9, g9, [1, 0] + list(range(2, 9)))

    def test_input_validation(self, g9, u3):
        with pytest.raises(ValueError, match="dimension"):
            isomorphism_check(g9, u3, [0, 1, 2])
        with pytest.raises(ValueError, match="bijection"):
            isomorphism_check(u3, u3, [0, 0, 1])


class TestCentralCharges:
    def test_lie_data(self):
        a8 = lie_algebra("A", 8)
        assert (a8.rank, a8.dim, a8.dual_coxeter) == (8, 80, 9)
        e8 = lie_algebra("E", 8)
        assert (e8.rank, e8.dim, e8.dual_coxeter) == (8, 248, 30)
        with pytest.raises(ValueError, match="unsupported"):
            lie_algebra("D", 4)

    def test_affine_values(self):
        assert affine_central_charge(lie_algebra("A", 8), 3) == Q(20)
        assert affine_central_charge(lie_algebra("A", 2), 9) == Q(6)
        assert affine_central_charge(lie_algebra("E", 8), 3) == Q(248, 11)
        with pytest.raises(ValueError, match="level"):
            affine_central_charge(lie_algebra("A", 1), 0)

    def test_commutant_budget(self):
        """The three decompositions of the rank-24 charge agree."""
        assert 24 - affine_central_charge(lie_algebra("A", 8), 3) == Q(4)
        assert parafermion_central_charge(lie_algebra("A", 2), 9) == Q(4)
        assert 24 - affine_central_charge(lie_algebra("E", 8), 3) == Q(16, 11)

    def test_parafermion_series(self):
        assert parafermion_central_charge(lie_algebra("A", 1), 2) == Q(1, 2)
        assert parafermion_central_charge(lie_algebra("A", 1), 3) == Q(4, 5)
        assert parafermion_central_charge(lie_algebra("A", 1), 9) == Q(16, 11)


class TestSerialization:
    def test_round_trip(self, g9, u3):
        for alg in (g9, u3):
            back = load_algebra(dump_algebra(alg))
            assert back.labels == alg.labels
            assert isomorphism_check(back, alg, list(range(alg.dim)))

    def test_header_validation(self):
        with pytest.raises(ValueError, match="header"):
            load_algebra("griess-lab-state v1 0\n")
        with pytest.raises(ValueError, match="label count"):
            load_algebra("griess-lab-alg v1 2 only_one\n")


class TestBridgeFromFock:
    def test_nine_axes_close_onto_the_table(self, family, g9):
        states = [family.axis(i, j) for i in range(3) for j in range(3)]
        labels = [f"e{i}{j}" for i in range(3) for j in range(3)]
        realized = algebra_from_griess(family.space, states, labels)
        assert isomorphism_check(realized, g9, list(range(9)))

    def test_first_row_realizes_the_three_axis_algebra(self, family, u3):
        states = [family.axis(0, j) for j in range(3)]
        realized = algebra_from_griess(family.space, states, ["e0", "e1", "e2"])
        assert isomorphism_check(realized, u3, [0, 1, 2])

    def test_detects_products_leaving_the_span(self, family):
        states = [family.axis(0, 0), family.axis(1, 1)]
        with pytest.raises(ValueError, match="escapes the span"):
            algebra_from_griess(family.space, states, ["p", "q"])
