import itertools
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.schemas.symmetry import SymmetryKind
from app.services import oracle_service, ordinal_service
from app.services.symmetry_service import (
    amplitude_reflect,
    catalog_size,
    central,
    enumerate_patterns,
    is_self_symmetric,
    ordered_bell,
    pattern_counterpart,
    reverse_pattern,
    symmetry_table,
    time_reverse,
)
from app.utils.errors import DimensionTooLargeError, InvalidParameterError, UnsupportedCombinationError
from tests.conftest import AMP, LARGEST, NONE, ORP, SMALLEST, pat, w

TIME = SymmetryKind.TIME_REVERSAL
AMPLITUDE = SymmetryKind.AMPLITUDE_REFLECTION
CENTRAL = SymmetryKind.CENTRAL

windows_5_6 = st.integers(5, 6).flatmap(lambda m: st.lists(st.integers(0, 4), min_size=m, max_size=m))


class TestWindowTransforms:
    def test_time_reverse(self):
        assert time_reverse(w(9, 3, 7, 1, 5)) == w(5, 1, 7, 3, 9)
        assert time_reverse(w(3, 1, 7, 1, 5)) == w(5, 1, 7, 1, 3)
        assert time_reverse(w(1, 3, 1)) == w(1, 3, 1)

    def test_amplitude_reflect(self):
        assert amplitude_reflect(w(9, 3, 7, 1, 5)) == w(1, 7, 3, 9, 5)
        assert amplitude_reflect(w(1, 1, 1)) == w(1, 1, 1)
        assert amplitude_reflect(w(1, 2, 3)) == w(3, 2, 1)

    @pytest.mark.parametrize("values", [(9, 3, 7, 1, 5), (3, 1, 7, 1, 5), (0.5, -2, 4)])
    def test_involutions(self, values):
        x = w(*values)
        assert time_reverse(time_reverse(x)) == x
        assert amplitude_reflect(amplitude_reflect(x)) == x
        assert central(central(x)) == x

    @pytest.mark.parametrize("values", [(1e16, 0, 1), (1e308, 1.5e308), (0.1, 0.7, 0.3)])
    def test_reflection_survives_float_rounding(self, values):
        x = w(*values)
        reflected = amplitude_reflect(x)
        assert amplitude_reflect(reflected) == x
        assert central(central(x)) == x
        assert ordinal_service.has_ties(reflected) == ordinal_service.has_ties(x)
        for policy in (SMALLEST, LARGEST):
            o = ordinal_service.orp(x, policy)
            assert ordinal_service.orp(reflected, policy) == pattern_counterpart(o, AMPLITUDE)

    def test_reflection_falls_back_to_negation(self):
        assert amplitude_reflect(w(1e16, 0, 1)) == w(-1e16, 0, -1)
        assert amplitude_reflect(w(1e308, 1.5e308)) == w(-1e308, -1.5e308)

    @settings(max_examples=300, deadline=None)
    @given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=6))
    def test_reflection_on_arbitrary_floats(self, values):
        x = w(*values)
        reflected = amplitude_reflect(x)
        assert amplitude_reflect(reflected) == x
        for policy in (SMALLEST, LARGEST):
            o = ordinal_service.orp(x, policy)
            assert ordinal_service.orp(reflected, policy) == pattern_counterpart(o, AMPLITUDE)

    def test_central_either_order(self):
        x = w(3, 1, 7, 1, 5)
        assert central(x) == time_reverse(amplitude_reflect(x))

    def test_self_symmetry(self):
        assert is_self_symmetric(w(1, 3, 1), TIME)
        assert not is_self_symmetric(w(9, 3, 7, 1, 5), TIME)
        assert is_self_symmetric(w(1, 2, 3), CENTRAL)
        assert is_self_symmetric(w(1, 2, 3, 2, 1), TIME)
        assert not is_self_symmetric(w(1, 2, 3, 2, 1), CENTRAL)


class TestReversePattern:
    def test_examples(self):
        assert reverse_pattern(pat(AMP, 5, 2, 4, 1, 3)) == pat(AMP, 3, 1, 4, 2, 5)
        assert reverse_pattern(pat(AMP, 3, 1, 5, 1, 4)) == pat(AMP, 4, 1, 5, 1, 3)
        assert reverse_pattern(pat(ORP, 1, 2, 3)) == pat(ORP, 3, 2, 1)

    def test_matches_reversed_window(self):
        assert reverse_pattern(ordinal_service.amp(w(9, 3, 7, 1, 5), NONE)) == ordinal_service.amp(w(5, 1, 7, 3, 9), NONE)


class TestPatternCounterpart:
    def test_examples(self):
        assert pattern_counterpart(pat(AMP, 3, 1, 5, 1, 4), TIME) == pat(AMP, 4, 1, 5, 1, 3)
        assert pattern_counterpart(pat(ORP, 2, 2, 1, 5, 3), AMPLITUDE) == pat(ORP, 3, 5, 1, 2, 2)
        assert pattern_counterpart(pat(AMP, 1, 2), TIME) == pat(AMP, 2, 1)

    def test_reflection_example_matches_encoding(self):
        reflected = amplitude_reflect(w(3, 1, 7, 1, 5))
        assert ordinal_service.orp(reflected, SMALLEST) == pat(ORP, 3, 5, 1, 2, 2)

    def test_unsupported(self):
        with pytest.raises(UnsupportedCombinationError):
            pattern_counterpart(pat(ORP, 2, 2, 1, 5, 3), TIME)
        with pytest.raises(UnsupportedCombinationError):
            pattern_counterpart(pat(AMP, 3, 1, 5, 1, 4), AMPLITUDE)

    def test_central_orp_flips_policy(self):
        # same smallest-index OrP, different central images
        first, second = w(1, 2, 1, 2), w(1, 2, 2, 1)
        assert ordinal_service.orp(first, SMALLEST) == ordinal_service.orp(second, SMALLEST)
        assert ordinal_service.orp(central(first), SMALLEST) != ordinal_service.orp(central(second), SMALLEST)
        mapped = pattern_counterpart(ordinal_service.orp(first, SMALLEST), CENTRAL)
        assert mapped.policy is LARGEST
        assert mapped == ordinal_service.orp(central(first), LARGEST)
        assert mapped == ordinal_service.orp(central(second), LARGEST)

    @settings(max_examples=300, deadline=None)
    @given(windows_5_6)
    def test_symmetries_hold_at_larger_m(self, values):
        x = w(*values)
        for policy in (SMALLEST, LARGEST):
            a = ordinal_service.amp(x, policy)
            o = ordinal_service.orp(x, policy)
            assert ordinal_service.amp(time_reverse(x), policy) == pattern_counterpart(a, TIME)
            assert ordinal_service.orp(amplitude_reflect(x), policy) == pattern_counterpart(o, AMPLITUDE)
            assert ordinal_service.amp(central(x), policy) == pattern_counterpart(a, CENTRAL)
            mapped = pattern_counterpart(o, CENTRAL)
            assert ordinal_service.orp(central(x), mapped.policy) == mapped

    def test_occurrence_order_fails_with_ties(self):
        x = w(3, 1, 7, 1, 5)
        a = ordinal_service.amp(x, NONE)
        assert ordinal_service.amp(time_reverse(x), NONE) != pattern_counterpart(a, TIME)


class TestCatalogs:
    @pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
    def test_occurrence_order_is_factorial(self, m):
        assert enumerate_patterns(m, ORP, NONE).size == factorial(m)
        assert enumerate_patterns(m, AMP, NONE).size == factorial(m)

    @pytest.mark.parametrize("m,expected", [(1, 1), (2, 3), (3, 13), (4, 75), (5, 541)])
    @pytest.mark.parametrize("policy", [SMALLEST, LARGEST])
    def test_equal_schemes_are_weak_orderings(self, m, expected, policy):
        assert enumerate_patterns(m, AMP, policy).size == expected
        assert len(oracle_service.weak_orderings(m)) == expected
        assert ordered_bell(m) == expected

    def test_orp_catalog_is_smaller_from_m4(self):
        # (1,2,1,2) and (1,2,2,1) share an equal-scheme OrP
        assert enumerate_patterns(3, ORP, SMALLEST).size == 13
        assert enumerate_patterns(4, ORP, SMALLEST).size < 75

    def test_m2_members(self):
        catalog = enumerate_patterns(2, AMP, SMALLEST)
        assert catalog.keys() == ["AmP:1,1", "AmP:1,2", "AmP:2,1"]
        assert pat(AMP, 1, 1) in catalog

    @pytest.mark.parametrize("m", [2, 3, 4])
    @pytest.mark.parametrize("policy", [SMALLEST, LARGEST])
    def test_closed_under_time_counterpart(self, m, policy):
        catalog = enumerate_patterns(m, AMP, policy)
        assert all(pattern_counterpart(p, TIME) in catalog for p in catalog.patterns)

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_members_are_valid(self, m):
        for kind, policy in itertools.product((ORP, AMP), (NONE, SMALLEST, LARGEST)):
            for p in enumerate_patterns(m, kind, policy).patterns:
                assert ordinal_service.is_valid_pattern(p.indexes, m, kind, policy)

    def test_dimension_guard(self):
        with pytest.raises(DimensionTooLargeError):
            enumerate_patterns(7, AMP, SMALLEST)
        with pytest.raises(InvalidParameterError):
            enumerate_patterns(0, AMP, SMALLEST)

    def test_catalog_size_closed_forms(self):
        assert catalog_size(7, AMP, NONE) == factorial(7)
        assert catalog_size(7, AMP, SMALLEST) == ordered_bell(7) == 47293
        with pytest.raises(DimensionTooLargeError):
            catalog_size(7, ORP, SMALLEST)


class TestSymmetryTable:
    def test_m2(self):
        rows = symmetry_table(2)
        assert [r.vector for r in rows] == ["1,1", "1,2", "2,1"]
        assert all(r.orp_equals_amp for r in rows)

    def test_m3(self):
        rows = {r.vector: r for r in symmetry_table(3)}
        assert len(rows) == 13
        assert rows["1,2,1"].orp == "OrP:1,1,2" and rows["1,2,1"].amp == "AmP:1,3,1"
        assert rows["1,2,1"].time_self_symmetric
        assert rows["2,1,2"].amplitude_partner == "1,2,1"
        same = sorted(v for v, r in rows.items() if r.orp_equals_amp)
        assert same == ["1,1,1", "1,1,2", "1,2,2", "1,2,3", "1,3,2", "2,1,3", "3,2,1"]
