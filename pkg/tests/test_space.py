import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tunekit.space import (
    Categorical,
    ContinuousUniform,
    IntegerUniform,
    SearchSpace,
    contains,
    grid_points,
    preset_names,
    preset_space,
    sample_param,
    space_from_dict,
    space_from_json,
    space_to_dict,
    space_to_json,
)


class FixedUniformRng:
    """Stand-in generator whose unit-uniform stream is a fixed constant."""

    def __init__(self, u):
        self.u = u

    def random(self):
        return self.u


class TestDistributionInvariants:
    def test_continuous_requires_low_below_high(self):
        with pytest.raises(ValueError):
            ContinuousUniform(1.0, 1.0)
        with pytest.raises(ValueError):
            ContinuousUniform(2.0, 1.0)

    def test_continuous_requires_finite_bounds(self):
        with pytest.raises(ValueError):
            ContinuousUniform(0.0, float("inf"))
        with pytest.raises(ValueError):
            ContinuousUniform(float("nan"), 1.0)

    def test_integer_allows_equal_bounds(self):
        dist = IntegerUniform(5, 5)
        assert contains(dist, 5)

    def test_integer_rejects_inverted_bounds(self):
        with pytest.raises(ValueError):
            IntegerUniform(3, 1)

    def test_categorical_needs_distinct_choices(self):
        with pytest.raises(ValueError):
            Categorical([])
        with pytest.raises(ValueError):
            Categorical(["a", "a"])


class TestSampleParam:
    def test_continuous_lower_bound_at_u_zero(self):
        assert sample_param(ContinuousUniform(0.1, 1000.0), FixedUniformRng(0.0)) == 0.1

    def test_integer_support_coverage(self):
        dist = IntegerUniform(1, 7)
        rng = np.random.default_rng(42)
        draws = {sample_param(dist, rng) for _ in range(7000)}
        assert draws == {1, 2, 3, 4, 5, 6, 7}

    def test_singleton_categorical_is_forced(self):
        dist = Categorical(["a"])
        rng = np.random.default_rng(0)
        assert all(sample_param(dist, rng) == "a" for _ in range(10))

    def test_same_seed_same_draws(self):
        dist = ContinuousUniform(-3.0, 12.0)
        first = np.random.default_rng(9)
        second = np.random.default_rng(9)
        assert [sample_param(dist, first) for _ in range(5)] == [
            sample_param(dist, second) for _ in range(5)
        ]

    def test_sampled_values_are_python_scalars(self):
        rng = np.random.default_rng(1)
        assert type(sample_param(ContinuousUniform(0, 1), rng)) is float
        assert type(sample_param(IntegerUniform(1, 7), rng)) is int
        assert type(sample_param(Categorical(["x", "y"]), rng)) is str


class TestContains:
    def test_continuous_bounds_inclusive(self):
        dist = ContinuousUniform(0.1, 1000.0)
        assert contains(dist, 0.1)
        assert contains(dist, 1000.0)
        assert not contains(dist, 0.0999)

    def test_integer_out_of_range(self):
        assert not contains(IntegerUniform(1, 7), 8)
        assert contains(IntegerUniform(1, 7), 1)
        assert contains(IntegerUniform(1, 7), 7)

    def test_categorical_membership(self):
        dist = Categorical(["x", "y"])
        assert contains(dist, "x")
        assert not contains(dist, "z")

    def test_type_tags_respected(self):
        assert not contains(IntegerUniform(1, 7), 3.0)
        assert not contains(ContinuousUniform(0, 1), True)
        assert not contains(Categorical(["1"]), 1)


class TestGridPoints:
    def test_continuous_endpoints_and_midpoint(self):
        assert grid_points(ContinuousUniform(0.0, 1.0), 3) == [0.0, 0.5, 1.0]

    def test_integer_capped_by_support(self):
        assert grid_points(IntegerUniform(1, 7), 100) == [1, 2, 3, 4, 5, 6, 7]

    def test_integer_equally_spaced_with_endpoints(self):
        assert grid_points(IntegerUniform(1, 7), 3) == [1, 4, 7]

    def test_categorical_ignores_resolution(self):
        assert grid_points(Categorical(["a", "b"]), 5) == ["a", "b"]

    def test_resolution_one(self):
        assert grid_points(ContinuousUniform(0.0, 2.0), 1) == [1.0]
        assert grid_points(IntegerUniform(3, 9), 1) == [3]
        assert grid_points(Categorical(["p", "q"]), 1) == ["p", "q"]

    def test_zero_resolution_is_an_error(self):
        with pytest.raises(ValueError):
            grid_points(ContinuousUniform(0, 1), 0)


class TestPresets:
    def test_ridge(self):
        space = preset_space("ridge")
        assert space.names == ("alpha",)
        assert space["alpha"] == ContinuousUniform(0.1, 1000.0)

    def test_logistic(self):
        space = preset_space("logistic")
        assert space.names == ("C",)
        assert space["C"] == ContinuousUniform(0.00001, 1.0)

    @pytest.mark.parametrize("name", ["adaboost", "gbm", "xgboost", "lightgbm"])
    def test_boosting_triples(self, name):
        space = preset_space(name)
        assert space.names == ("learning_rate", "max_depth", "n_estimators")
        assert space["learning_rate"] == ContinuousUniform(0.00001, 1.0)
        assert space["max_depth"] == IntegerUniform(1, 7)
        assert space["n_estimators"] == IntegerUniform(1, 1000)

    def test_random_forest(self):
        space = preset_space("random_forest")
        assert space.names == ("max_features", "n_estimators")
        assert space["max_features"] == ContinuousUniform(0.0, 1.0)
        assert space["n_estimators"] == IntegerUniform(1, 1000)

    def test_unknown_preset_lists_valid_names(self):
        with pytest.raises(ValueError) as err:
            preset_space("nope")
        for name in preset_names():
            assert name in str(err.value)

    @pytest.mark.parametrize("name", sorted(preset_names()))
    def test_presets_round_trip_serialization(self, name):
        space = preset_space(name)
        assert space_from_json(space_to_json(space)) == space
        assert space_from_dict(space_to_dict(space)) == space


class TestSearchSpace:
    def test_iteration_order_is_declaration_order(self):
        space = SearchSpace({"b": IntegerUniform(0, 1), "a": ContinuousUniform(0, 1)})
        assert space.names == ("b", "a")

    def test_order_matters_for_equality(self):
        one = SearchSpace({"a": IntegerUniform(0, 1), "b": IntegerUniform(0, 1)})
        two = SearchSpace({"b": IntegerUniform(0, 1), "a": IntegerUniform(0, 1)})
        assert one != two

    def test_contains_point_checks_keys_and_support(self):
        space = SearchSpace({"x": ContinuousUniform(0, 1), "c": Categorical(["a", "b"])})
        assert space.contains_point({"x": 0.5, "c": "a"})
        assert not space.contains_point({"x": 0.5})
        assert not space.contains_point({"x": 0.5, "c": "a", "extra": 1})
        assert not space.contains_point({"x": 2.0, "c": "a"})

    def test_empty_space_rejected(self):
        with pytest.raises(ValueError):
            SearchSpace({})


_dist_strategy = st.one_of(
    st.tuples(
        st.floats(-1e6, 1e6, allow_nan=False), st.floats(-1e6, 1e6, allow_nan=False)
    )
    .filter(lambda t: t[0] < t[1])
    .map(lambda t: ContinuousUniform(*t)),
    st.tuples(st.integers(-1000, 1000), st.integers(-1000, 1000))
    .filter(lambda t: t[0] <= t[1])
    .map(lambda t: IntegerUniform(*t)),
    st.lists(st.text(min_size=1, max_size=4), min_size=1, max_size=5, unique=True).map(
        Categorical
    ),
)


@given(dist=_dist_strategy, seed=st.integers(0, 2**32 - 1))
@settings(max_examples=200, deadline=None)
def test_samples_always_in_support(dist, seed):
    rng = np.random.default_rng(seed)
    assert contains(dist, sample_param(dist, rng))


@given(dist=_dist_strategy, resolution=st.integers(1, 50))
@settings(max_examples=200, deadline=None)
def test_grid_sorted_unique_and_contained(dist, resolution):
    points = grid_points(dist, resolution)
    assert len(points) == len(set(points))
    assert all(contains(dist, p) for p in points)
    if not isinstance(dist, Categorical):
        assert points == sorted(points)
