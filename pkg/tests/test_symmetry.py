import itertools
import random
from fractions import Fraction

import pytest

from prymspin.keel_ring import (RingElement, all_divisors, build_graded_basis,
                                canonicalize, four_point_relation)
from prymspin.symmetry import (PermGroup, act, identity_perm, invariant_basis,
                               invariant_dims, parse_cycles, reynolds,
                               standard_group)


def gen(*marks):
    return RingElement.generator(canonicalize(set(marks), 6))


def test_parse_cycles():
    assert parse_cycles("(1 2)(3 4)", 6) == (2, 1, 4, 3, 5, 6)
    assert parse_cycles("(1,2,3)", 6) == (2, 3, 1, 4, 5, 6)


def test_standard_group_orders():
    assert standard_group("R2").order == 48
    assert standard_group("S2plus").order == 72
    assert standard_group("S2minus").order == 120
    assert standard_group("M2").order == 720
    with pytest.raises(ValueError):
        standard_group("nope")


def test_group_order_divides_factorial():
    for tag in ("R2", "S2plus", "S2minus", "M2"):
        assert 720 % standard_group(tag).order == 0


def test_act_on_generator():
    gb = build_graded_basis(6)
    g = parse_cycles("(1 2)", 6)
    assert act(g, gen(1, 3), gb) == gb.reduce(gen(2, 3))


def test_act_fixes_unit():
    gb = build_graded_basis(6)
    for g in standard_group("R2").elements[:10]:
        assert act(g, RingElement.unit(6), gb) == RingElement.unit(6)


def test_relations_closed_under_action():
    gb = build_graded_basis(6)
    g = parse_cycles("(3 4)", 6)
    for rel in four_point_relation(6, 1, 2, 3, 4):
        assert act(g, rel, gb).is_zero()


def test_reynolds_idempotent_and_projects():
    gb = build_graded_basis(6)
    group = standard_group("R2")
    rng = random.Random(9)
    divisors = all_divisors(6)
    for _ in range(5):
        x = gb.reduce(RingElement(6, 1, {
            (rng.choice(divisors),): Fraction(rng.randint(-3, 3))
            for _ in range(3)}))
        rx = reynolds(group, x, gb)
        assert reynolds(group, rx, gb) == rx
        for g in group.generators:
            assert act(g, rx, gb) == rx


def test_trivial_group_gives_ambient_dims():
    gb = build_graded_basis(6)
    trivial = PermGroup(6, [identity_perm(6)])
    assert invariant_dims(trivial, gb) == gb.dims()


@pytest.mark.parametrize("tag,expected", [
    ("R2", [1, 4, 4, 1]),
    ("S2plus", [1, 3, 3, 1]),
    ("S2minus", [1, 3, 3, 1]),
    ("M2", [1, 2, 2, 1]),
])
def test_invariant_dims(tag, expected):
    gb = build_graded_basis(6)
    assert invariant_dims(standard_group(tag), gb) == expected


def test_invariant_dims_palindromic():
    gb = build_graded_basis(6)
    for tag in ("R2", "S2plus", "S2minus", "M2"):
        dims = invariant_dims(standard_group(tag), gb)
        assert dims == dims[::-1]


def test_invariant_basis_degree0_and_top():
    gb = build_graded_basis(6)
    for tag in ("R2", "S2plus", "S2minus", "M2"):
        basis = invariant_basis(standard_group(tag), gb)
        assert len(basis.per_degree[0]) == 1
        assert basis.per_degree[0][0] == RingElement.unit(6)
        assert len(basis.per_degree[3]) == 1


def test_r2_degree1_orbit_sums_span():
    # five divisor orbits, one linear relation: dimension 4
    gb = build_graded_basis(6)
    group = standard_group("R2")
    basis = invariant_basis(group, gb)
    assert len(basis.per_degree[1]) == 4
    # every divisor orbit sum lies in the span
    from prymspin.space_registry import load_space
    space = load_space("R2")
    for name in space.boundary:
        coords = basis.coordinates(space.named_class(name).value)
        assert coords is not None


def test_act_is_ring_homomorphism():
    gb = build_graded_basis(6)
    rng = random.Random(23)
    divisors = all_divisors(6)
    elems = [gb.reduce(RingElement(6, 1, {
        (rng.choice(divisors),): Fraction(rng.randint(-2, 2))
        for _ in range(2)})) for _ in range(6)]
    for g in (parse_cycles("(1 2 3)", 6), parse_cycles("(2 5)(3 6)", 6)):
        for x, y in itertools.combinations(elems, 2):
            lhs = act(g, gb.multiply(x, y), gb)
            rhs = gb.multiply(act(g, x, gb), act(g, y, gb))
            assert lhs == rhs
