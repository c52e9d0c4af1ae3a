import numpy as np
import pytest

from troprank import semiring as sr
from troprank.inequalities import (
    EmptyBoxError,
    ParametricBox,
    contains,
    residual,
    solve_double,
    solve_recursive,
    solve_upper,
)
from troprank.semiring import TOP, ZERO, DomainError, StarConditionError

from helpers import (
    FOUR_A,
    FOUR_B,
    FOUR_G,
    FOUR_H,
    direct_ineq_holds,
    parse_matrix,
    parse_vector,
    random_matrix,
    random_regular_vector,
    random_sparse_matrix,
)

TOL = 1e-9


def four_pencil():
    a = parse_matrix(FOUR_A)
    b = parse_matrix(FOUR_B)
    return sr.mat_add(
        sr.scalar_mul(sr.inv(sr.from_value(2)), a),
        sr.scalar_mul(sr.inv(sr.from_value(3)), b),
    )


class TestSolveUpper:
    def test_identity_gives_bound(self):
        rng = np.random.default_rng(0)
        d = random_regular_vector(rng, 4)
        assert sr.eq(solve_upper(sr.identity(4), d), d)

    def test_four_star_bound(self):
        star = sr.kleene_star(four_pencil())
        h = parse_vector(FOUR_H)
        x_max = solve_upper(star, h)
        assert np.allclose(sr.to_values(x_max), [1, 1 / 6, 1 / 2, 1 / 4], rtol=1e-12)

    def test_result_feasible_and_maximal(self):
        rng = np.random.default_rng(1)
        for _ in range(25):
            a = random_sparse_matrix(rng, 3)
            d = random_regular_vector(rng, 3)
            x_max = solve_upper(a, d)
            assert sr.leq(sr.mat_mul(a, x_max), d, TOL)
            # sampling oracle: every feasible y sits below x_max
            ys = x_max[None, :] + rng.uniform(-1.5, 0.5, size=(1000, 3))
            prods = (a[None, :, :] + ys[:, None, :]).max(axis=2)
            feasible = np.all(prods <= d[None, :] + TOL, axis=1)
            assert feasible.any()
            assert np.all(ys[feasible] <= x_max[None, :] + TOL)

    def test_precondition_errors(self):
        a = sr.zeros((2, 2))
        with pytest.raises(DomainError):
            solve_upper(a, parse_vector([1, 1]))
        with pytest.raises(DomainError):
            solve_upper(sr.identity(2), parse_vector([1, 0]))

    def test_top_bound_unconstrains(self):
        a = sr.identity(3)
        d = np.array([sr.from_value(2), TOP, TOP])
        x_max = solve_upper(a, d)
        assert x_max[0] == sr.from_value(2)
        assert x_max[1] == TOP and x_max[2] == TOP


class TestSolveRecursive:
    def test_zero_matrix_family(self):
        c = parse_vector([2, 3, 1])
        box = solve_recursive(sr.zeros((3, 3)), c)
        assert sr.eq(box.star, sr.identity(3))
        assert sr.eq(box.lower, c)
        assert np.all(box.upper == TOP)
        # members are exactly the vectors above c
        assert contains(box, c)
        assert contains(box, c + 1.0)
        assert not contains(box, c - 0.5)

    def test_infeasible_trace(self):
        with pytest.raises(StarConditionError):
            solve_recursive(sr.from_values([[3.0]]), parse_vector([1]))

    def test_four_pencil_members(self):
        g = parse_vector(FOUR_G)
        box = solve_recursive(four_pencil(), g)
        x = parse_vector([1, "1/6", "1/2", "1/4"])
        assert contains(box, x)

    def test_closure_property(self):
        # any direct solution of a x + c <= x is fixed by the star matrix
        rng = np.random.default_rng(2)
        for _ in range(30):
            n = int(rng.integers(2, 5))
            a = random_matrix(rng, n)
            a = sr.scalar_mul(-sr.trace_fn(a) - rng.uniform(0.0, 1.0), a)
            c = random_regular_vector(rng, n) - 2.0
            star = sr.kleene_star(a)
            found = 0
            for _ in range(200):
                x = random_regular_vector(rng, n, lo=1 / 16, hi=16)
                lhs = sr.mat_add(sr.mat_mul(a, x), c)
                if sr.leq(lhs, x, 0.0):
                    found += 1
                    assert sr.eq(sr.mat_mul(star, x), x, TOL)
            assert found > 0


class TestSolveDouble:
    def test_pinned_box(self):
        c = parse_vector([2, 5])
        box = solve_double(sr.zeros((2, 2)), c, c)
        assert sr.eq(box.lower, box.upper)
        assert sr.eq(box.member(c), c)

    def test_four_instance_bounds(self):
        box = solve_double(four_pencil(), parse_vector(FOUR_G), parse_vector(FOUR_H))
        assert np.allclose(sr.to_values(box.lower), [1, 0, 0, 0], atol=1e-15)
        assert np.allclose(sr.to_values(box.upper), [1, 1 / 6, 1 / 2, 1 / 4], rtol=1e-12)
        x_lo = sr.mat_mul(box.star, box.lower)
        x_hi = sr.mat_mul(box.star, box.upper)
        assert sr.eq(x_lo, x_hi, TOL)
        assert np.allclose(sr.to_values(x_lo), [1, 1 / 6, 1 / 2, 1 / 4], rtol=1e-12)

    def test_membership_by_direct_substitution(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            n = int(rng.integers(2, 5))
            a = random_matrix(rng, n)
            a = sr.scalar_mul(-sr.trace_fn(a) - rng.uniform(0.1, 1.0), a)
            d = random_regular_vector(rng, n)
            c = d - rng.uniform(0.5, 2.0, size=n)
            try:
                box = solve_double(a, c, d)
            except EmptyBoxError:
                continue
            a_ord = sr.to_values(a)
            c_ord = sr.to_values(c)
            d_ord = sr.to_values(d)
            for _ in range(100):
                u = box.lower + rng.random(n) * (box.upper - box.lower)
                x = sr.to_values(box.member(u))
                assert direct_ineq_holds(a_ord, c_ord, d_ord, x)

    def test_error_kinds_are_distinct(self):
        # trace failure and empty-box failure raise different types
        hot = sr.from_values([[3.0, 1.0], [1.0, 3.0]])
        with pytest.raises(StarConditionError):
            solve_double(hot, parse_vector([1, 1]), parse_vector([2, 2]))
        cool = sr.scalar_mul(sr.from_value(1 / 8), hot)
        with pytest.raises(EmptyBoxError):
            solve_double(cool, parse_vector([4, 4]), parse_vector([1, 1]))

    def test_classification_matches_gate_value(self):
        rng = np.random.default_rng(4)
        seen_feasible = seen_empty = 0
        for _ in range(60):
            n = int(rng.integers(2, 4))
            a = random_matrix(rng, n)
            a = sr.scalar_mul(-sr.trace_fn(a) - 0.3, a)
            d = random_regular_vector(rng, n)
            c = d + rng.uniform(-2.0, 0.7, size=n)
            star = sr.kleene_star(a)
            gate = sr.mat_mul(sr.conjugate(d), sr.mat_mul(star, c))
            if gate > TOL:
                seen_empty += 1
                with pytest.raises(EmptyBoxError):
                    solve_double(a, c, d)
            elif gate < -TOL:
                seen_feasible += 1
                box = solve_double(a, c, d)
                x = sr.to_values(box.member(box.lower))
                assert direct_ineq_holds(
                    sr.to_values(a), sr.to_values(c), sr.to_values(d), x
                )
        assert seen_feasible >= 5 and seen_empty >= 5

    def test_infeasibility_backed_by_search(self):
        # when the solver reports an empty box, random search agrees
        rng = np.random.default_rng(5)
        checked = 0
        for _ in range(40):
            n = 3
            a = random_matrix(rng, n)
            a = sr.scalar_mul(-sr.trace_fn(a) - 0.2, a)
            d = random_regular_vector(rng, n)
            c = d + rng.uniform(-1.0, 1.0, size=n)
            try:
                solve_double(a, c, d)
            except EmptyBoxError:
                checked += 1
                a_ord, c_ord, d_ord = map(sr.to_values, (a, c, d))
                # include the least solution of the recursive half as a witness
                star_c = sr.to_values(sr.mat_mul(sr.kleene_star(a), c))
                assert not direct_ineq_holds(a_ord, c_ord, d_ord, star_c)
                for _ in range(400):
                    x = sr.to_values(
                        c + rng.uniform(0.0, 1.0, size=n) * np.maximum(d - c, 0.0)
                    )
                    assert not direct_ineq_holds(a_ord, c_ord, d_ord, x)
        assert checked >= 5


class TestContains:
    def test_lower_member(self):
        box = solve_double(four_pencil(), parse_vector(FOUR_G), parse_vector(FOUR_H))
        assert contains(box, sr.mat_mul(box.star, box.lower))

    def test_exceeding_greatest_member(self):
        box = solve_double(four_pencil(), parse_vector(FOUR_G), parse_vector(FOUR_H))
        big = sr.mat_mul(box.star, box.upper) + 0.5
        assert not contains(box, big)

    def test_four_solution_membership(self):
        box = solve_double(four_pencil(), parse_vector(FOUR_G), parse_vector(FOUR_H))
        assert contains(box, parse_vector([1, "1/6", "1/2", "1/4"]))

    def test_dimension_mismatch(self):
        box = solve_double(four_pencil(), parse_vector(FOUR_G), parse_vector(FOUR_H))
        with pytest.raises(ValueError):
            contains(box, parse_vector([1, 1]))

    def test_against_dense_enumeration(self):
        # membership agrees with a dense sweep of the parameter box
        rng = np.random.default_rng(6)
        for _ in range(10):
            n = 2
            a = random_matrix(rng, n)
            a = sr.scalar_mul(-sr.trace_fn(a) - 0.5, a)
            d = random_regular_vector(rng, n)
            c = d - rng.uniform(0.5, 1.5, size=n)
            try:
                box = solve_double(a, c, d)
            except EmptyBoxError:
                continue
            axes = [np.linspace(box.lower[j], box.upper[j], 40) for j in range(n)]
            mesh = np.meshgrid(*axes, indexing="ij")
            members = set()
            for u in np.stack([m.ravel() for m in mesh], axis=1):
                x = sr.mat_mul(box.star, u)
                members.add(tuple(np.round(x, 6)))
                assert contains(box, x)
            # vectors slightly above the greatest member are rejected
            top = sr.mat_mul(box.star, box.upper)
            assert not contains(box, top + 0.2)
            assert len(members) >= 1


class TestParametricBox:
    def test_empty_bounds_rejected(self):
        with pytest.raises(EmptyBoxError):
            ParametricBox(
                star=sr.identity(2),
                lower=parse_vector([2, 2]),
                upper=parse_vector([1, 1]),
            )

    def test_member_requires_in_box_parameter(self):
        box = ParametricBox(
            star=sr.identity(2), lower=parse_vector([1, 1]), upper=parse_vector([2, 2])
        )
        with pytest.raises(DomainError):
            box.member(parse_vector([3, 1]))


class TestResidual:
    def test_greatest_solution(self):
        rng = np.random.default_rng(7)
        for _ in range(30):
            a = random_sparse_matrix(rng, 3)
            d = random_regular_vector(rng, 3)
            x = residual(a, d)
            assert sr.leq(sr.mat_mul(a, x), d, TOL)
            assert not sr.leq(sr.mat_mul(a, x + 1e-6), d, TOL)
