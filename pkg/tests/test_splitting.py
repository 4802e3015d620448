"""Unit tests for splitting patterns, orbit enumeration, and the tables.

The golden files record the reference tables verbatim; comparisons parse both
sides down to factor multisets so that cosmetic ordering differences cannot
mask (or fake) agreement.  Advisory cells are asserted to be defective rather
than contained.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from goldens import GOLDEN_TABLES, all_pattern_strings, load_golden
from sdxa.errors import DegreeMismatchError, DomainError, PatternError
from sdxa.groups import AbelianGroup, regular_cycle_type
from sdxa.indexcalc import delta
from sdxa.perms import CycleType, ind, pair_cycle_count, pair_index, partitions
from sdxa.splitting import (
    SplittingPattern,
    decomposition_patterns,
    disc_valuation,
    disc_valuation_pair,
    format_pattern,
    generate_table,
    inertia_orbits,
    parse_pattern,
    remark_formula,
)

factor_strategy = st.tuples(
    st.integers(min_value=1, max_value=12), st.integers(min_value=1, max_value=12)
)
pattern_strategy = st.lists(factor_strategy, min_size=1, max_size=6).map(
    lambda factors: SplittingPattern(tuple(factors))
)


class TestSplittingPattern:
    def test_canonical_order(self):
        p = SplittingPattern(((1, 2), (2, 1), (1, 1)))
        assert p.factors == ((2, 1), (1, 2), (1, 1))

    def test_degree_and_valuation(self):
        p = parse_pattern("(1^2 12)")
        assert p.degree == 5
        assert p.valuation == 1
        # Each (e, f) factor stands for f inertia orbits of size e.
        assert p.ramification_indices == (2, 1, 1, 1)

    def test_rejects_empty_or_zero(self):
        with pytest.raises(DomainError):
            SplittingPattern(())
        with pytest.raises(DomainError):
            SplittingPattern(((0, 1),))


class TestParseFormat:
    def test_mixed_token(self):
        assert parse_pattern("(1^2 12)").factors == ((2, 1), (1, 2), (1, 1))

    def test_single_totally_ramified(self):
        assert parse_pattern("(1^6)").factors == ((6, 1),)

    def test_totally_split(self):
        assert parse_pattern("(1 1 1)").factors == ((1, 1), (1, 1), (1, 1))

    def test_braced_exponent(self):
        assert parse_pattern("(1^{10})").factors == ((10, 1),)
        assert parse_pattern("(2^{10} 1^5)").factors == ((10, 2), (5, 1))

    def test_degree_assertion(self):
        assert parse_pattern("(1^2 1)", degree=3).degree == 3
        with pytest.raises(PatternError):
            parse_pattern("(1^2 1)", degree=4)

    def test_malformed_inputs(self):
        for bad in ["1^2", "()", "(1^)", "(^2)", "(a)", "(1^2x)", "(10)", "(1^0)", "(0)"]:
            with pytest.raises(PatternError):
                parse_pattern(bad)

    def test_large_inertial_degree_round_trip(self):
        p = SplittingPattern(((1, 10),))
        assert format_pattern(p) == "(10^1)"
        assert parse_pattern("(10^1)") == p

    def test_golden_strings_round_trip(self):
        strings = all_pattern_strings()
        assert len(strings) >= 30
        for text in strings:
            pattern = parse_pattern(text)
            assert parse_pattern(format_pattern(pattern)) == pattern

    @given(pattern_strategy)
    def test_round_trip_random_patterns(self, pattern):
        assert parse_pattern(format_pattern(pattern)) == pattern


class TestInertiaOrbits:
    def test_totally_ramified_cubic_pair(self):
        g3 = AbelianGroup.from_label("C3")
        assert inertia_orbits(CycleType((3,)), g3.element((1,)), 3, g3) == (3, 3, 3)

    def test_quintic_pair(self):
        g5 = AbelianGroup.from_label("C5")
        assert inertia_orbits(CycleType((5,)), g5.element((1,)), 5, g5) == (
            5,
            5,
            5,
            5,
            5,
        )

    def test_unramified(self):
        g2 = AbelianGroup.from_label("C2")
        assert inertia_orbits(CycleType((1, 1, 1)), g2.identity(), 3, g2) == (1,) * 6

    def test_sum_and_count_match_pair_formulas(self):
        for label in ["C2", "C3", "C2xC2", "C6"]:
            group = AbelianGroup.from_label(label)
            for d in (3, 4, 5):
                for g in partitions(d):
                    for h in group.elements():
                        orbits = inertia_orbits(g, h, d, group)
                        assert sum(orbits) == d * group.order
                        assert len(orbits) == pair_cycle_count(
                            g, regular_cycle_type(h)
                        )


class TestDecompositionPatterns:
    def test_cubic_transposition_with_involution(self):
        c2 = AbelianGroup.from_label("C2")
        patterns = decomposition_patterns(CycleType((2, 1)), c2.element((1,)), 3, c2)
        assert parse_pattern("(1^2 1^2 1^2)") in patterns

    def test_quartic_transposition_both_frobenius_shapes(self):
        c2 = AbelianGroup.from_label("C2")
        patterns = decomposition_patterns(
            CycleType((2, 1, 1)), c2.element((1,)), 4, c2
        )
        assert parse_pattern("(1^2 1^2 1^2 1^2)") in patterns
        assert parse_pattern("(1^2 1^2 2^2)") in patterns

    def test_trivial_pair_gives_unramified_patterns(self):
        c2 = AbelianGroup.from_label("C2")
        patterns = decomposition_patterns(
            CycleType((1, 1, 1)), c2.identity(), 3, c2
        )
        assert all(p.is_unramified() for p in patterns)
        assert parse_pattern("(1 1 1 1 1 1)") in patterns
        # Frobenius shapes are exactly the cycle types of the product group's
        # elements acting on 6 points.
        assert parse_pattern("(6)") in patterns

    def test_every_pattern_consistent_with_inertia(self):
        for label in ["C2", "C3"]:
            group = AbelianGroup.from_label(label)
            for d in (3, 4):
                for g in partitions(d):
                    for h in group.elements():
                        expected = inertia_orbits(g, h, d, group)
                        for pattern in decomposition_patterns(g, h, d, group):
                            assert pattern.ramification_indices == expected
                            assert pattern.degree == d * group.order


class TestValuationFunctions:
    def test_disc_valuation_examples(self):
        assert disc_valuation(CycleType((2, 2, 1))) == 2
        assert disc_valuation(CycleType((1, 1))) == 0

    def test_disc_valuation_pair_example(self):
        c2 = AbelianGroup.from_label("C2")
        assert disc_valuation_pair(CycleType((4,)), c2.element((1,)), 4, c2) == 6

    def test_remark_formula_examples(self):
        assert remark_formula(parse_pattern("(1^2 1)"), parse_pattern("(1^2)")) == 3
        assert remark_formula(parse_pattern("(1 1 1)"), parse_pattern("(1 1)")) == 0
        assert remark_formula(parse_pattern("(1^3)"), parse_pattern("(1^5)")) == 14
        assert pair_index(CycleType((3,)), CycleType((5,))) == 14

    def test_remark_formula_equals_pair_valuation_exhaustively(self):
        # Oracle equivalence for d <= 5 against every prime-cyclic group up
        # to order 7, using the inertia-level (f = 1) patterns.
        for p in (2, 3, 5, 7):
            group = AbelianGroup.from_label(f"C{p}")
            for d in (3, 4, 5):
                for g in partitions(d):
                    for h in group.elements():
                        pattern_f = SplittingPattern(
                            tuple((e, 1) for e in g.parts)
                        )
                        pattern_k = SplittingPattern(
                            tuple((e, 1) for e in regular_cycle_type(h).parts)
                        )
                        assert remark_formula(
                            pattern_f, pattern_k
                        ) == disc_valuation_pair(g, h, d, group)

    @given(pattern_strategy, pattern_strategy, st.data())
    def test_remark_formula_is_refinement_invariant(self, left, right, data):
        # Splitting one factor (e, f) into (e, f1) + (e, f - f1) never changes
        # the value: the formula is linear in each inertial degree.  Together
        # with the f = 1 base case above this pins the formula to the pair
        # index for every refinement.
        index = data.draw(st.integers(min_value=0, max_value=len(left.factors) - 1))
        e, f = left.factors[index]
        f1 = data.draw(st.integers(min_value=1, max_value=f)) if f > 1 else 1
        if f1 == f:
            split = left
        else:
            rest = left.factors[:index] + left.factors[index + 1 :]
            split = SplittingPattern(rest + ((e, f1), (e, f - f1)))
        assert remark_formula(split, right) == remark_formula(left, right)
        assert remark_formula(right, split) == remark_formula(right, left)


class TestGenerateTable:
    def test_requires_prime_cyclic(self):
        with pytest.raises(DomainError):
            generate_table(3, AbelianGroup.from_label("C4"))
        with pytest.raises(DomainError):
            generate_table(3, AbelianGroup.from_label("C2xC2"))
        with pytest.raises(DomainError):
            generate_table(6, AbelianGroup.from_label("C2"))

    def test_row_counts_and_caps(self):
        expectations = {
            (3, "C2"): (2, 3),
            (3, "C3"): (2, 6),
            (4, "C2"): (4, 4),
            (5, "C2"): (6, 5),
            (5, "C5"): (6, 20),
        }
        for (d, label), (row_count, cap) in expectations.items():
            table = generate_table(d, AbelianGroup.from_label(label))
            assert len(table.rows) == row_count
            assert table.delta_cap == cap

    def test_delta_columns(self):
        assert [r.delta for r in generate_table(3, AbelianGroup.from_label("C3")).rows] == [2, 6]
        assert [r.delta for r in generate_table(4, AbelianGroup.from_label("C2")).rows] == [2, 4, 2, 4]
        assert [r.delta for r in generate_table(5, AbelianGroup.from_label("C5")).rows] == [4, 8, 8, 12, 12, 20]

    def test_row_internal_consistency(self):
        for filename, d, label in GOLDEN_TABLES:
            group = AbelianGroup.from_label(label)
            generator = group.element((1,))
            table = generate_table(d, group)
            for row in table.rows:
                assert row.v_disc_f == ind(row.generator)
                assert row.delta == delta(d, group, row.generator, generator)
                assert 0 <= row.delta <= table.delta_cap
                for pattern in row.f_splitting:
                    assert pattern.degree == d
                    assert pattern.valuation == row.v_disc_f
                    assert d - sum(f for _, f in pattern.factors) == row.v_disc_f
                for pattern in row.fk_splitting:
                    assert pattern.degree == d * group.order
                    assert pattern.valuation == row.v_disc_fk

    def test_matches_golden_tables(self):
        for filename, d, label in GOLDEN_TABLES:
            golden = load_golden(filename)
            assert (golden.d, golden.group_label) == (d, label)
            group = AbelianGroup.from_label(label)
            table = generate_table(d, group)
            assert table.delta_cap == golden.delta_cap
            assert len(table.rows) == len(golden.rows)
            for row, gold in zip(table.rows, golden.rows):
                assert row.generator.parts == gold.generator_parts
                assert row.v_disc_f == gold.v_disc_f
                assert row.v_disc_fk == gold.v_disc_fk
                assert row.delta == gold.delta
                # The degree-d side must reproduce the recorded cells exactly.
                golden_f = {parse_pattern(c.text, degree=d) for c in gold.f_cells}
                assert golden_f == set(row.f_splitting)
                enumerated = set(row.fk_splitting)
                for cell in gold.fk_cells:
                    pattern = parse_pattern(cell.text)
                    if cell.advisory:
                        # An advisory cell must actually be defective: wrong
                        # total degree, wrong valuation, or an index multiset
                        # that no Frobenius choice can produce.
                        defects = [
                            pattern.degree != d * group.order,
                            pattern.valuation != row.v_disc_fk,
                            pattern.ramification_indices
                            != inertia_orbits(
                                row.generator, group.element((1,)), d, group
                            ),
                        ]
                        assert any(defects), f"advisory cell {cell.text} is fine"
                        assert pattern not in enumerated
                    else:
                        assert pattern in enumerated, (
                            f"{filename}: {cell.text} missing from row "
                            f"{row.generator}"
                        )

    def test_corrected_forms_of_advisory_cells_are_enumerated(self):
        # The two defective cells have obvious intended forms; both appear in
        # the enumeration, which is strong evidence they are typos rather
        # than modelling gaps.
        group = AbelianGroup.from_label("C5")
        table = generate_table(5, group)
        first_row = table.rows[0]
        assert first_row.generator.parts == (2, 1, 1, 1)
        enumerated = set(first_row.fk_splitting)
        assert parse_pattern("(1^{10} 1^5 2^5)") in enumerated
        assert parse_pattern("(1^{10} 3^5)") in enumerated
