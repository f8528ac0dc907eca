# -*- coding: utf-8 -*-
import numpy as np
import pytest

from src.core.exceptions import ConfigError, DomainError, GuardRefusalError, ZeroEnergyError
from src.core.mask import Mask, flip_element, mask_from_index
from src.optimization.channel_provider import SceneChannelProvider
from src.optimization.evaluator import FomEvaluator, evaluate_mask
from src.optimization.search import (
    EXHAUSTIVE_LIMIT,
    SearchResult,
    baseline_masks,
    coordinate_descent,
    exhaustive_search,
    multi_start_coordinate_descent,
    random_search,
)
from src.optimization.strategy_manager import (
    SearchStrategy,
    StrategyConfig,
    StrategyManager,
)
from src.signal_processing.fom import FomConfig
from tests.conftest import TabulatedProvider

CFG = FomConfig()


def table_score(table):
    return lambda mask: table[mask.index]


def echo_spectrum(index, freqs):
    """인덱스마다 세기가 다른 10 ns 반사파"""
    return 1.0 + 0.05 * index * np.exp(-2j * np.pi * freqs * 10e-9)


@pytest.fixture
def tabulated(band_grid):
    return lambda n, recorded=None: TabulatedProvider(band_grid, n, echo_spectrum, recorded)


class FirstMaskStrategy(SearchStrategy):
    """점 경로 로딩 확인용 전략: 마스크 0만 평가"""

    name = "first_mask"

    def search(self, provider, evaluator):
        mask = Mask.all_off(provider.n_elements)
        value = evaluator.evaluate(mask)
        return SearchResult(self.name, mask, value, ((mask.index, value),), 1)


def test_baseline_masks():
    off, on = baseline_masks(3)
    assert off.index == 0
    assert on.index == 7
    with pytest.raises(DomainError):
        baseline_masks(0)


def test_exhaustive_tie_goes_to_smallest_index(tabulated):
    result = exhaustive_search(
        tabulated(2), CFG, score_fn=table_score({0: 0.2, 1: 0.5, 2: 0.5, 3: 0.3})
    )
    assert result.best_mask.index == 1
    assert result.best_fom == 0.5
    assert result.evaluations == 4
    assert [i for i, _ in result.trace] == [0, 1, 2, 3]
    assert result.worst_mask.index == 0


def test_exhaustive_guard_refuses_large_simulated_problems(tabulated):
    provider = tabulated(EXHAUSTIVE_LIMIT + 1)
    with pytest.raises(GuardRefusalError):
        exhaustive_search(provider, CFG, score_fn=lambda mask: 0.0)
    assert provider.calls == {}


def test_exhaustive_enumerates_recorded_masks_only(tabulated):
    provider = tabulated(4, recorded=[9, 1, 5])
    result = exhaustive_search(provider, CFG)
    assert [i for i, _ in result.trace] == [1, 5, 9]
    assert set(provider.calls) == {1, 5, 9}


def test_coordinate_descent_climbs_to_best(tabulated):
    table = {0: 0.1, 1: 0.2, 2: 0.3, 3: 0.4}
    provider = tabulated(2)
    evaluator = FomEvaluator(provider, CFG, score_fn=table_score(table))
    result = coordinate_descent(provider, Mask.all_off(2), 10, CFG, evaluator=evaluator)
    assert result.best_mask.index == 3
    assert result.best_fom == 0.4
    assert result.converged
    assert result.passes == 2
    assert result.evaluations == len(result.trace) == 5
    assert result.trace[0] == (0, 0.1)
    assert evaluator.stats.cache_hits == 1


def test_coordinate_descent_from_optimum_stops_after_one_pass(tabulated):
    table = {0: 0.1, 1: 0.2, 2: 0.3, 3: 0.4}
    provider = tabulated(2)
    result = coordinate_descent(
        provider, mask_from_index(3, 2), 10, CFG, score_fn=table_score(table)
    )
    assert result.best_mask.index == 3
    assert result.passes == 1
    assert result.converged
    assert result.evaluations == 3


def test_coordinate_descent_returns_the_mask_it_stopped_on(tabulated):
    # 0과 1이 동률: 1에서 시작하면 1에서 멈추며, 0의 이웃 2가 더 좋음
    table = {0: 0.5, 1: 0.5, 2: 0.9, 3: 0.4}
    provider = tabulated(2)
    result = coordinate_descent(
        provider, mask_from_index(1, 2), 10, CFG, score_fn=table_score(table)
    )
    assert result.converged
    assert result.best_mask.index == 1
    assert result.best_fom == 0.5
    for i in range(2):
        assert table[flip_element(result.best_mask, i).index] <= result.best_fom


def test_multi_start_result_is_a_local_maximum(tabulated):
    rng = np.random.default_rng(13)
    # 0.25 단위로 양자화해 동률을 많이 만듦
    table = dict(enumerate(np.round(rng.uniform(0.0, 1.0, size=32) * 4) / 4))
    provider = tabulated(5)
    result = multi_start_coordinate_descent(
        provider, 6, 3, 10, CFG, score_fn=table_score(table)
    )
    assert result.converged
    for i in range(5):
        assert table[flip_element(result.best_mask, i).index] <= result.best_fom


def test_coordinate_descent_respects_max_sweeps(tabulated):
    # 계속 개선되는 지형에서 패스 한도 도달
    provider = tabulated(3)
    result = coordinate_descent(
        provider, Mask.all_off(3), 1, CFG, score_fn=lambda m: float(bin(m.index).count("1"))
    )
    assert result.passes == 1
    assert not result.converged
    assert result.best_mask.index == 7


def test_coordinate_descent_argument_checks(tabulated):
    provider = tabulated(3)
    with pytest.raises(DomainError):
        coordinate_descent(provider, Mask.all_off(3), 0, CFG)
    with pytest.raises(DomainError):
        coordinate_descent(provider, Mask.all_off(4), 2, CFG)


def test_coordinate_descent_skips_unrecorded_neighbours(tabulated):
    provider = tabulated(4, recorded=[1, 5, 9])
    result = coordinate_descent(provider, mask_from_index(1, 4), 5, CFG)
    assert {i for i, _ in result.trace} <= {1, 5, 9}
    assert result.converged


def test_random_search_is_seed_deterministic(tabulated):
    provider = tabulated(6)
    first = random_search(provider, 50, 11, CFG)
    second = random_search(provider, 50, 11, CFG)
    assert first.trace == second.trace
    assert first.best_mask == second.best_mask
    assert first.evaluations == 50


def test_random_search_single_draw(tabulated):
    result = random_search(tabulated(4), 1, 0, CFG)
    assert result.evaluations == 1
    assert result.best_fom == result.trace[0][1]
    with pytest.raises(DomainError):
        random_search(tabulated(4), 0, 0, CFG)


def test_random_search_covers_small_space_and_matches_exhaustive(tabulated):
    rng = np.random.default_rng(5)
    table = dict(enumerate(rng.uniform(0.0, 1.0, size=16)))
    provider = tabulated(4)
    evaluator = FomEvaluator(provider, CFG, score_fn=table_score(table))
    random_result = random_search(provider, 65536, 1, CFG, evaluator=evaluator)
    exhaustive = exhaustive_search(provider, CFG, score_fn=table_score(table))
    assert {i for i, _ in random_result.trace} == set(range(16))
    assert random_result.best_mask == exhaustive.best_mask
    assert random_result.best_fom == exhaustive.best_fom
    assert evaluator.stats.computed == 16


def test_random_search_draws_from_recorded_masks(tabulated):
    result = random_search(tabulated(4, recorded=[2, 3, 7]), 40, 9, CFG)
    assert {i for i, _ in result.trace} <= {2, 3, 7}


def test_multi_start_shares_memo_and_is_deterministic(tabulated):
    provider = tabulated(5)
    first = multi_start_coordinate_descent(provider, 4, 21, 5, CFG)
    second = multi_start_coordinate_descent(provider, 4, 21, 5, CFG)
    assert first.trace == second.trace
    assert first.best_fom == max(v for _, v in first.trace)
    assert sum(provider.calls.values()) <= 2 * len(provider.calls)


def test_trace_frame_columns(tabulated):
    result = exhaustive_search(tabulated(2), CFG)
    frame = result.trace_frame()
    assert list(frame.columns) == ["order", "mask_index", "fom"]
    assert frame["order"].tolist() == [0, 1, 2, 3]
    assert frame["mask_index"].tolist() == [0, 1, 2, 3]


def test_scene_search_thread_count_does_not_change_results(small_scene, band_grid):
    provider = SceneChannelProvider(small_scene, band_grid)
    sequential = exhaustive_search(provider, CFG, threads=1)
    parallel = exhaustive_search(provider, CFG, threads=4)
    assert sequential.trace == parallel.trace
    assert sequential.best_mask == parallel.best_mask


def test_scene_coordinate_descent_ends_at_local_optimum(small_scene, band_grid):
    provider = SceneChannelProvider(small_scene, band_grid)
    evaluator = FomEvaluator(provider, CFG)
    result = coordinate_descent(provider, Mask.all_off(8), 20, CFG, evaluator=evaluator)
    assert result.converged
    for i in range(8):
        assert evaluator.evaluate(flip_element(result.best_mask, i)) <= result.best_fom

    exhaustive = exhaustive_search(provider, CFG, evaluator=evaluator)
    assert exhaustive.best_fom >= result.best_fom
    for baseline in baseline_masks(8):
        assert exhaustive.best_fom >= evaluator.evaluate(baseline)


@pytest.mark.parametrize(
    "config,expected",
    [
        (StrategyConfig(name="exhaustive"), "exhaustive"),
        (StrategyConfig(name="coordinate_descent", start_index=2), "coordinate_descent"),
        (StrategyConfig(name="coordinate_descent", starts=3), "multi_start_coordinate_descent"),
        (StrategyConfig(name="random", n=20, seed=4), "random"),
        (StrategyConfig(name="tests.test_search.FirstMaskStrategy"), "first_mask"),
    ],
)
def test_strategy_manager_runs_strategies(tabulated, config, expected):
    result = StrategyManager(config).run(tabulated(3), CFG)
    assert result.strategy == expected
    assert result.evaluations == len(result.trace)


@pytest.mark.parametrize(
    "name", ["annealing", "no.such.module.Strategy", "src.core.mask.Mask"]
)
def test_strategy_manager_rejects_unknown_strategies(name):
    with pytest.raises(ConfigError):
        StrategyManager(StrategyConfig(name=name))


def test_evaluate_mask_pure_delay_is_concentrated(band_grid):
    # 지연이 샘플 위에 놓이도록 t_step의 정수배
    cfg = FomConfig(zero_pad_factor=1)
    t_step = 1.0 / (band_grid.count * band_grid.step)
    provider = TabulatedProvider(
        band_grid, 3, lambda index, freqs: np.exp(-2j * np.pi * freqs * 5 * t_step)
    )
    assert evaluate_mask(provider, mask_from_index(2, 3), cfg) == pytest.approx(1.0, abs=1e-9)


def test_evaluate_mask_is_repeatable(tabulated):
    provider = tabulated(4)
    mask = mask_from_index(6, 4)
    assert evaluate_mask(provider, mask, CFG) == evaluate_mask(provider, mask, CFG)


def test_evaluate_mask_zero_spectrum_names_the_mask(band_grid):
    provider = TabulatedProvider(band_grid, 3, lambda index, freqs: np.zeros(len(freqs)))
    mask = mask_from_index(5, 3)
    with pytest.raises(ZeroEnergyError) as info:
        evaluate_mask(provider, mask, CFG)
    assert info.value.mask_index == mask.index
    assert info.value.exit_code == 3
