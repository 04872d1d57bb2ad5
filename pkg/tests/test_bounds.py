"""Bound evaluation, regime classification and equality reporting."""

import json
from fractions import Fraction

import pytest

from stariso.bounds import (
    BOUTRIG,
    CARO_THIRD,
    CARO_TREES,
    ORDER_MINUS_LEAVES,
    ORDER_PLUS_LEAVES,
    STAR_BOUND,
    SUPPORT_BOUND,
    evaluate_bounds,
    gap_order_plus_leaves,
    regime_classify,
    regime_table_violations,
)
from stariso.families import gen_corona_extremal, gen_spider_gap
from stariso.graphs import as_tree, build_graph, enumerate_free_trees


def path_tree(n):
    return as_tree(build_graph(n, [(i, i + 1) for i in range(n - 1)]))


def star_tree(k):
    return as_tree(build_graph(k + 1, [(0, i) for i in range(1, k + 1)]))


class TestRegimeClassify:
    def test_k1_examples(self):
        assert regime_classify(3, 2, 1) == "ℓ > n/3"
        assert regime_classify(9, 3, 1) == "ℓ = n/3"
        assert regime_classify(7, 2, 1) == "ℓ < n/3"

    def test_k2_thresholds(self):
        assert regime_classify(12, 3, 2) == "ℓ = (k-1)n/(k+2)"
        assert regime_classify(12, 4, 2) == "(k-1)n/(k+2) < ℓ < kn/(k+2)"
        assert regime_classify(12, 6, 2) == "ℓ = kn/(k+2)"
        assert regime_classify(12, 7, 2) == "ℓ > kn/(k+2)"
        assert regime_classify(12, 2, 2) == "ℓ < (k-1)n/(k+2)"

    def test_bad_input(self):
        with pytest.raises(ValueError):
            regime_classify(4, 5, 1)
        with pytest.raises(ValueError):
            regime_classify(4, 2, 0)


class TestEvaluateBounds:
    def test_six_path_sits_on_the_triple_point(self):
        report = evaluate_bounds(path_tree(6), 1)
        assert report.iota == 2
        assert report.regime == "ℓ = n/3"
        assert report.bounds[ORDER_PLUS_LEAVES] == 2
        assert report.bounds[ORDER_MINUS_LEAVES] == 2
        assert report.equality[ORDER_PLUS_LEAVES]
        assert report.equality[ORDER_MINUS_LEAVES]
        assert report.equality[CARO_THIRD]

    @pytest.mark.parametrize("k", [2, 3, 4])
    def test_star_attains_its_bound(self, k):
        report = evaluate_bounds(star_tree(k), k)
        assert report.bounds[STAR_BOUND] == 1
        assert report.iota == 1
        assert report.equality[STAR_BOUND]
        assert CARO_TREES in report.not_applicable

    def test_corona_extremal_attains_order_minus_leaves(self):
        t = as_tree(gen_corona_extremal(2, 2, 8))
        report = evaluate_bounds(t, 2)
        assert report.bounds[ORDER_MINUS_LEAVES] == 2
        assert report.iota == 2
        assert report.equality[ORDER_MINUS_LEAVES]

    def test_five_path_all_strict(self):
        report = evaluate_bounds(path_tree(5), 1)
        assert report.iota == 1
        assert not any(report.equality.values())

    def test_two_vertex_not_applicable_entries(self):
        report = evaluate_bounds(path_tree(2), 1)
        assert ORDER_MINUS_LEAVES in report.not_applicable
        assert CARO_THIRD in report.not_applicable
        assert SUPPORT_BOUND in report.not_applicable
        assert report.bounds[ORDER_PLUS_LEAVES] == 1
        assert report.equality[ORDER_PLUS_LEAVES]

    def test_stars_excluded_from_leaf_removal_bounds(self):
        report = evaluate_bounds(star_tree(3), 1)
        assert "star" in report.not_applicable[ORDER_MINUS_LEAVES]
        assert "star" in report.not_applicable[BOUTRIG]
        assert CARO_TREES in report.bounds  # K_{1,3} is not the 1-star
        assert report.bounds[CARO_TREES] == Fraction(4, 3)

    def test_star_bound_informational_at_k1(self):
        report = evaluate_bounds(path_tree(6), 1)
        assert STAR_BOUND in report.notes
        assert report.bounds[STAR_BOUND] == Fraction(8, 3)

    def test_json_rendering(self):
        report = evaluate_bounds(path_tree(5), 1)
        payload = json.loads(json.dumps(report.to_json_dict()))
        assert payload["bounds"][ORDER_PLUS_LEAVES] == "7/4"
        assert payload["bounds"][ORDER_MINUS_LEAVES] == "3/2"
        assert payload["regime"] == "ℓ > n/3"
        assert payload["iota"] == 1
        report2 = evaluate_bounds(path_tree(2), 1)
        assert report2.to_json_dict()["bounds"][CARO_THIRD].startswith("N/A:")


class TestGap:
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_spider_gap_is_k(self, k):
        assert gap_order_plus_leaves(gen_spider_gap(k)) == k

    def test_six_path_gap_zero(self):
        assert gap_order_plus_leaves(path_tree(6)) == 0


class TestSweptInvariants:
    def test_no_applicable_bound_violated(self):
        for n in range(1, 11):
            for t in enumerate_free_trees(n):
                for k in (1, 2, 3):
                    report = evaluate_bounds(t, k)
                    for name, value in report.bounds.items():
                        assert Fraction(report.iota) <= value, (n, k, name)
                    assert not regime_table_violations(t, k, report.iota)

    def test_support_bound_below_leaf_bound(self):
        for n in range(3, 11):
            for t in enumerate_free_trees(n):
                report = evaluate_bounds(t, 1)
                if SUPPORT_BOUND not in report.bounds:
                    continue
                sb = report.bounds[SUPPORT_BOUND]
                opl = report.bounds[ORDER_PLUS_LEAVES]
                assert sb <= opl
                assert (sb == opl) == (not t.strong_support_set)

    def test_order_plus_leaf_order_floor(self):
        # any tree with a k-star has n + l >= 2k + 1, tight only at the star
        for n in range(2, 11):
            for t in enumerate_free_trees(n):
                for k in (2, 3, 4):
                    if t.max_degree < k:
                        continue
                    total = t.n + t.leaf_order
                    assert total >= 2 * k + 1
                    is_k_star = t.n == k + 1 and t.max_degree == k
                    assert (total == 2 * k + 1) == is_k_star
