import itertools
import random
from fractions import Fraction

import pytest

from helpring.intsolve import (
    Constraint,
    UnboundedSystem,
    enumerate_integer_points,
    variable_bounds,
)


def test_simple_box():
    cons = [
        Constraint.of([1, 0], lo=-2, hi=3),
        Constraint.of([0, 1], lo=0, hi=2),
    ]
    assert variable_bounds(cons, 2) == [(-2, 3), (0, 2)]
    pts = list(enumerate_integer_points(cons, 2))
    assert len(pts) == 6 * 3


def test_diamond_needs_lp_strength():
    # |x| + |y| <= 1 written as four half-planes; interval propagation alone
    # cannot bound this, the simplex must
    cons = [
        Constraint.of([1, 1], hi=1),
        Constraint.of([1, -1], hi=1),
        Constraint.of([-1, 1], hi=1),
        Constraint.of([-1, -1], hi=1),
    ]
    assert variable_bounds(cons, 2) == [(-1, 1), (-1, 1)]
    pts = set(enumerate_integer_points(cons, 2))
    assert pts == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}


def test_equality_constraint():
    cons = [
        Constraint.of([1, 1, 1], lo=1, hi=1),
        Constraint.of([1, 0, 0], lo=0, hi=1),
        Constraint.of([0, 1, 0], lo=0, hi=1),
        Constraint.of([0, 0, 1], lo=0, hi=1),
    ]
    pts = set(enumerate_integer_points(cons, 3))
    assert pts == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}


def test_unbounded_refused():
    cons = [Constraint.of([1, 1], lo=0)]
    with pytest.raises(UnboundedSystem):
        variable_bounds(cons, 2)


def test_infeasible():
    cons = [
        Constraint.of([1], lo=2),
        Constraint.of([1], hi=1),
    ]
    assert variable_bounds(cons, 1) is None
    assert list(enumerate_integer_points(cons, 1)) == []


def test_fractional_bounds_round_inward():
    cons = [Constraint.of([2], lo=Fraction(-3), hi=Fraction(5))]  # -3/2 <= x <= 5/2
    assert variable_bounds(cons, 1) == [(-1, 2)]


def test_against_brute_force_random_systems():
    rng = random.Random(42)
    for _ in range(60):
        nvars = rng.randint(1, 4)
        cons = [Constraint.of([rng.randint(-3, 3) for _ in range(nvars)],
                              lo=None if rng.random() < 0.3 else rng.randint(-6, 2),
                              hi=rng.randint(0, 8))
                for _ in range(rng.randint(2, 6))]
        # keep everything inside a big reference box so brute force is finite
        for j in range(nvars):
            coeffs = [0] * nvars
            coeffs[j] = 1
            cons.append(Constraint.of(coeffs, lo=-7, hi=7))
        expected = {
            pt for pt in itertools.product(range(-7, 8), repeat=nvars)
            if all(c.holds([Fraction(x) for x in pt]) for c in cons)
        }
        got = set(enumerate_integer_points(cons, nvars))
        assert got == expected


def test_bounds_are_certified_by_lp_cross_check():
    scipy = pytest.importorskip("scipy.optimize")
    rng = random.Random(9)
    for _ in range(25):
        nvars = rng.randint(1, 3)
        rows = []
        for _ in range(rng.randint(nvars + 1, 6)):
            rows.append(([rng.randint(-3, 3) for _ in range(nvars)], rng.randint(0, 6)))
        for j in range(nvars):  # ensure boundedness
            e = [0] * nvars
            e[j] = 1
            rows.append((list(e), 5))
            rows.append(([-x for x in e], 5))
        cons = [Constraint.of(c, hi=b) for c, b in rows]
        box = variable_bounds(cons, nvars)
        if box is None:
            continue
        import numpy as np

        A = np.array([c for c, _ in rows], dtype=float)
        b = np.array([v for _, v in rows], dtype=float)
        for j in range(nvars):
            c = np.zeros(nvars)
            c[j] = 1.0
            res = scipy.linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * nvars, method="highs")
            assert res.success
            assert box[j][0] >= res.fun - 1e-6
            res = scipy.linprog(-c, A_ub=A, b_ub=b, bounds=[(None, None)] * nvars, method="highs")
            assert box[j][1] <= -res.fun + 1e-6
