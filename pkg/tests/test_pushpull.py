import itertools
from fractions import Fraction

import pytest

from prymspin import reference
from prymspin.exact_linear import kernel_basis, rank
from prymspin.keel_ring import RingElement, build_graded_basis, canonicalize
from prymspin.pushpull import (INTERSECTION_CALIBRATION, NamedCombo,
                               check_combo_vanishes, derive_linear_relation,
                               derive_m05_relations, intersection_number,
                               intersection_table, m2_relation_verdicts,
                               mumford_base_numbers, push_to_base, pushforward,
                               pushforward_m05, stratum_pushforward_check,
                               verify_lambda_identities)
from prymspin.space_registry import load_space


def gen(*marks, n=6):
    return RingElement.generator(canonicalize(set(marks), n))


class TestPushforward:
    def test_f_r_examples(self):
        r2 = load_space("R2")
        combo = pushforward(r2, gen(1, 2))
        assert combo.terms == {("d0pp",): Fraction(48)}     # 24 [D0'']
        combo = pushforward(r2, gen(3, 4))
        assert combo.terms == {("d0p",): Fraction(8)}       # 4 [D0']
        combo = pushforward(r2, gen(1, 3))
        assert combo.terms == {("d0r",): Fraction(12)}      # 6 [D0^r]

    def test_f_plus_example(self):
        sp = load_space("S2plus")
        combo = pushforward(sp, gen(1, 2, 3))
        assert combo.terms == {("b1p",): Fraction(576)}     # 72 [B1+]

    def test_linear_relations(self):
        for tag in ("R2", "S2plus", "S2minus"):
            combo = derive_linear_relation(tag)
            expected = {k: Fraction(v)
                        for k, v in reference.LINEAR_RELATIONS[tag].items()}
            assert combo.terms == expected

    def test_derived_relation_vanishes_in_ring(self):
        for tag in ("R2", "S2plus"):
            combo = derive_linear_relation(tag)
            ok, _ = check_combo_vanishes(combo)
            assert ok

    def test_relation_lies_in_table_kernel(self):
        for tag in ("R2", "S2plus"):
            combo = derive_linear_relation(tag)
            rows, cols, mat = intersection_table(tag)
            vec = [combo.terms.get((c,), Fraction(0)) for c in cols]
            assert all(sum(mat.rows[i][j] * vec[j] for j in range(len(cols)))
                       == 0 for i in range(len(rows)))


class TestM05:
    def test_h_table_pushforward(self):
        elem = gen(5, 1, n=5)
        combo = pushforward_m05("h0alpha", elem)
        assert combo.terms == {("Xm",): Fraction(48)}       # 6 [X-], aut 8

    def test_relations_match_reference_and_hold(self):
        combos = derive_m05_relations()
        for combo, (space_tag, expected) in zip(combos, reference.M05_RELATIONS):
            assert combo.space == space_tag
            assert combo.terms == {k: Fraction(v) for k, v in expected.items()}
            ok, _ = check_combo_vanishes(combo)
            assert ok


class TestIntersectionTables:
    @pytest.mark.parametrize("tag", ["R2", "S2plus", "S2minus"])
    def test_every_entry(self, tag):
        rows, cols, mat = intersection_table(tag)
        order = reference.BOUNDARY_ORDER[tag]
        perm = [cols.index(c) for c in order]
        for i, rname in enumerate(rows):
            got = [mat.rows[i][j] for j in perm]
            expected = [Fraction(x) for x in reference.A4_TABLES[tag][rname]]
            assert got == expected, rname

    @pytest.mark.parametrize("tag", ["R2", "S2plus", "S2minus"])
    def test_rank_and_kernel(self, tag):
        rows, cols, mat = intersection_table(tag)
        assert rank(mat) == reference.A4_RANKS[tag]
        ker = kernel_basis(mat)
        expected = reference.A4_KERNELS[tag]
        assert len(ker) == len(expected)
        if ker:
            order = reference.BOUNDARY_ORDER[tag]
            v = [ker[0][cols.index(c)] for c in order]
            scale = next(x / y for x, y in zip(v, expected[0]) if y)
            assert v == [scale * y for y in expected[0]]

    def test_calibration_anchor(self):
        # the single documented calibration: d0''.[E',']_Q = 1/4 pins the
        # constant, and the frozen value reproduces it
        r2 = load_space("R2")
        gb = r2.gb
        total = gb.integrate(gb.multiply(r2.named_class("d0pp").value,
                                         r2.named_class("Ep_p").value))
        derived = Fraction(1, 4) * r2.group.order / total
        assert derived == INTERSECTION_CALIBRATION

    def test_empty_intersections(self):
        r2 = load_space("R2")
        assert intersection_number(r2, "d0r", "Ep_p") == 0
        assert intersection_number(r2, "d1", "Ep_p") == Fraction(0)


def test_mumford_base_numbers():
    assert mumford_base_numbers() == reference.MUMFORD_VALUES


def test_m2_relation_verdicts():
    verdicts = m2_relation_verdicts()
    assert verdicts["12*delta1^2 + delta0*delta1"] is True
    # the two cross-check variants, evaluated rather than assumed: the
    # swapped-index variant fails, the cubic one holds
    assert verdicts["delta0*delta1 + 12*delta0^2"] is False
    assert verdicts["528*delta1^3 + delta0^3"] is True


def test_lambda_identities_all_hold():
    report = verify_lambda_identities()
    assert len(report) == 15
    assert all(info["holds"] for info in report.values())


class TestTransversality:
    # products of stack classes of transverse strata equal the stack class
    # of the intersection
    @pytest.mark.parametrize("tag,a,b,target", [
        ("R2", "d0p", "d0pp", "Ep_pp"),
        ("R2", "d0p", "d0r", "Ep_r"),
        ("R2", "d0p", "d1", "F1p"),
        ("R2", "d0p", "d11", "F11p"),
        ("R2", "d0r", "d1", "F1r"),
        ("R2", "d0r", "d11", "F11r"),
        ("M2", "delta0", "delta1", "Delta01"),
        ("S2minus", "b0m", "a1m", "Zm"),
        ("S2minus", "a0m", "b0m", "Dm"),
    ])
    def test_products(self, tag, a, b, target):
        space = load_space(tag)
        gb = space.gb
        prod = gb.multiply(space.named_class(a).value,
                           space.named_class(b).value)
        assert prod == space.named_class(target).value

    def test_reducible_intersection_splits(self):
        # the intersection of A0- and A1- has two components
        sm = load_space("S2minus")
        gb = sm.gb
        prod = gb.multiply(sm.named_class("a0m").value,
                           sm.named_class("a1m").value)
        total = gb.reduce(sm.named_class("Xm").value
                          + sm.named_class("Ym").value)
        assert prod == total


class TestPushToBase:
    def test_boundary_pushforwards(self):
        m2 = load_space("M2")
        expected = {
            "R2": {"d0p": ("delta0", 6), "d0pp": ("delta0", 1),
                   "d0r": ("delta0", 4), "d1": ("delta1", 6),
                   "d11": ("delta1", 9)},
            "S2plus": {"a0p": ("delta0", 4), "b0p": ("delta0", 3),
                       "a1p": ("delta1", Fraction(9, 2)),
                       "b1p": ("delta1", Fraction(1, 2))},
            "S2minus": {"a0m": ("delta0", 4), "b0m": ("delta0", 1),
                        "a1m": ("delta1", 3)},
        }
        for tag, table in expected.items():
            space = load_space(tag)
            for name, (base_name, coeff) in table.items():
                pushed = push_to_base(space, space.named_class(name).value)
                target = m2.named_class(base_name).value.scale(coeff)
                assert pushed == space.gb.reduce(target), (tag, name)

    def test_fundamental_class_degree(self):
        m2 = load_space("M2")
        for tag in ("R2", "S2plus", "S2minus"):
            space = load_space(tag)
            pushed = push_to_base(space, RingElement.unit(6))
            assert pushed == RingElement.unit(6).scale(
                space.fundamental_pushforward)

    @pytest.mark.parametrize("tag", ["R2", "S2plus", "S2minus"])
    def test_stratum_pushforward_columns(self, tag):
        results = stratum_pushforward_check(tag)
        assert results and all(results.values())

    def test_projection_formula(self):
        # f_*(a . f^* b) = f_* a . b on sampled classes
        m2 = load_space("M2")
        gb = m2.gb
        for tag in ("R2", "S2plus", "S2minus"):
            space = load_space(tag)
            samples_a = [space.named_class(n).value
                         for n in list(space.boundary)[:3]]
            samples_b = [m2.named_class(n).value
                         for n in ("delta0", "delta1")]
            for a, b in itertools.product(samples_a, samples_b):
                lhs = push_to_base(space, gb.multiply(a, b))
                rhs = gb.multiply(push_to_base(space, a), b)
                assert lhs == rhs
