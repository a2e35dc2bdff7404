import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.schemas.pattern import Pattern
from app.schemas.window import Window
from app.services import ordinal_service
from app.services.ordinal_service import amp, encode_windows, inverse, is_valid_pattern, orp, rank_with_ties
from app.utils.errors import EmptyWindowError, NonFiniteValueError, NotInvertibleError, ParseError
from tests.conftest import AMP, LARGEST, NONE, ORP, SMALLEST, pat, w


class TestWindow:
    def test_rejects_non_finite(self):
        with pytest.raises(NonFiniteValueError):
            w(1, float("nan"), 3)
        with pytest.raises(NonFiniteValueError):
            Window(values=(1.0, float("inf")))

    def test_rejects_empty(self):
        with pytest.raises(EmptyWindowError):
            Window(values=())

    def test_str(self):
        assert str(w(9, 3, 7, 1, 5)) == "(9,3,7,1,5)"


class TestRankWithTies:
    def test_tie_free(self):
        assert rank_with_ties(w(9, 3, 7, 1, 5)).order == (4, 2, 5, 3, 1)

    def test_equal_values_keep_occurrence_order(self):
        ranked = rank_with_ties(w(3, 1, 7, 1, 5))
        assert ranked.order == (2, 4, 1, 5, 3)
        assert ranked.ranks == (3, 1, 5, 2, 4)
        assert ranked.groups == ((2, 4), (1,), (5,), (3,))

    def test_all_equal(self):
        ranked = rank_with_ties(w(1, 1, 1))
        assert ranked.order == (1, 2, 3)
        assert ranked.groups == ((1, 2, 3),)

    def test_errors(self):
        with pytest.raises(NonFiniteValueError):
            encode_windows([[1.0, float("-inf")]], AMP, SMALLEST)
        with pytest.raises(EmptyWindowError):
            encode_windows(np.empty((3, 0)), AMP, SMALLEST)


class TestOrP:
    @pytest.mark.parametrize("policy", [NONE, SMALLEST, LARGEST])
    def test_tie_free_any_policy(self, policy):
        assert orp(w(9, 3, 7, 1, 5), policy).indexes == (4, 2, 5, 3, 1)
        assert orp(w(1, 2, 3), policy).indexes == (1, 2, 3)

    def test_equal_values(self):
        assert orp(w(3, 1, 7, 1, 5), NONE).indexes == (2, 4, 1, 5, 3)
        assert orp(w(3, 1, 7, 1, 5), SMALLEST).indexes == (2, 2, 1, 5, 3)
        assert orp(w(3, 1, 7, 1, 5), LARGEST).indexes == (4, 4, 1, 5, 3)

    def test_kind_and_policy_carried(self):
        p = orp(w(3, 1, 7, 1, 5), LARGEST)
        assert p.kind is ORP and p.policy is LARGEST
        assert p.key == "OrP:4,4,1,5,3"


class TestAmP:
    @pytest.mark.parametrize("policy", [NONE, SMALLEST, LARGEST])
    def test_tie_free_any_policy(self, policy):
        assert amp(w(9, 3, 7, 1, 5), policy).indexes == (5, 2, 4, 1, 3)

    def test_equal_values(self):
        assert amp(w(3, 1, 7, 1, 5), NONE).indexes == (3, 1, 5, 2, 4)
        assert amp(w(3, 1, 7, 1, 5), SMALLEST).indexes == (3, 1, 5, 1, 4)
        assert amp(w(3, 1, 7, 1, 5), LARGEST).indexes == (3, 2, 5, 2, 4)

    def test_batch_matches_single(self):
        rows = [(9, 3, 7, 1, 5), (3, 1, 7, 1, 5), (5, 1, 7, 1, 3), (2, 2, 2, 2, 2)]
        codes = encode_windows(rows, AMP, SMALLEST)
        assert [tuple(r) for r in codes.tolist()] == [amp(w(*r)).indexes for r in rows]


class TestInverse:
    def test_orp_to_amp(self):
        assert inverse(pat(ORP, 4, 2, 5, 3, 1)) == pat(AMP, 5, 2, 4, 1, 3)
        assert inverse(pat(ORP, 1, 2, 3)) == pat(AMP, 1, 2, 3)

    def test_occurrence_order_cross_check(self):
        p = orp(w(3, 1, 7, 1, 5), NONE)
        assert inverse(p) == amp(w(3, 1, 7, 1, 5), NONE)

    def test_repeats_not_invertible(self):
        with pytest.raises(NotInvertibleError):
            inverse(pat(ORP, 2, 2, 1, 5, 3))

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=6, unique=True))
    def test_tie_free_duality(self, values):
        x = w(*values)
        assert inverse(orp(x, NONE)) == amp(x, NONE)
        assert inverse(amp(x, NONE)) == orp(x, NONE)


class TestPattern:
    def test_key_and_parse(self):
        p = Pattern.parse("AmP:3,1,5,1,4", SMALLEST)
        assert p == pat(AMP, 3, 1, 5, 1, 4)
        assert str(p) == p.key == "AmP:3,1,5,1,4"

    @pytest.mark.parametrize("text", ["3,1,2", "XyZ:1,2", "AmP:1,a", "AmP:1,4"])
    def test_parse_errors(self, text):
        with pytest.raises(ParseError) as exc:
            Pattern.parse(text, SMALLEST, line=7)
        assert exc.value.line == 7
        assert str(exc.value).startswith("line 7:")

    def test_invariants(self):
        with pytest.raises(ValueError):
            pat(AMP, 1, 1, policy=NONE)
        with pytest.raises(ValueError):
            pat(ORP, 1, 2, 1)
        with pytest.raises(ValueError):
            pat(AMP, 0, 1)
        # AmP repeats need not be consecutive
        assert pat(AMP, 1, 2, 1).has_repeats


class TestIsValidPattern:
    def test_examples(self):
        assert is_valid_pattern((1, 1, 3), 3, AMP, SMALLEST)
        assert not is_valid_pattern((1, 1, 2), 3, AMP, SMALLEST)
        assert is_valid_pattern((2, 2, 3), 3, AMP, LARGEST)
        assert not is_valid_pattern((1, 1, 2), 3, AMP, NONE)
        assert not is_valid_pattern((1, 2, 1), 3, ORP, SMALLEST)
        assert not is_valid_pattern((1, 2), 3, AMP, SMALLEST)
        assert not is_valid_pattern(("a", 2), 2, AMP, SMALLEST)

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    @pytest.mark.parametrize("kind", [ORP, AMP])
    @pytest.mark.parametrize("policy", [NONE, SMALLEST, LARGEST])
    def test_agrees_with_exhaustive_encoding(self, m, kind, policy):
        windows = list(itertools.product(range(1, m + 1), repeat=m))
        realised = {tuple(r) for r in encode_windows(windows, kind, policy).tolist()}
        for candidate in itertools.product(range(1, m + 1), repeat=m):
            assert is_valid_pattern(candidate, m, kind, policy) == (candidate in realised), candidate


class TestMonotoneInvariance:
    def test_random_increasing_maps(self, rng):
        series = rng.integers(0, 6, size=400).astype(float)
        rows = np.lib.stride_tricks.sliding_window_view(series, 4)
        for _ in range(100):
            # strictly increasing piecewise-linear map over [-1, 7]
            knots = np.concatenate(([-1.0], np.sort(rng.uniform(-1.0, 7.0, size=3)), [7.0]))
            images = np.cumsum(rng.uniform(0.1, 5.0, size=knots.size))
            mapped = np.interp(rows, knots, images)
            for kind in (ORP, AMP):
                for policy in (NONE, SMALLEST, LARGEST):
                    assert np.array_equal(encode_windows(mapped, kind, policy), encode_windows(rows, kind, policy))


def test_has_ties():
    assert ordinal_service.has_ties(w(3, 1, 7, 1, 5))
    assert not ordinal_service.has_ties(w(9, 3, 7, 1, 5))
