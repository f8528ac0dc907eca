# -*- coding: utf-8 -*-
"""
RIS 마스크 탐색 전략 모듈

전수 탐색, 좌표 하강(단일/다중 시작), 무작위 탐색, 기준 마스크(all-off/all-on)를 제공합니다.
모든 전략에서 동률은 가장 작은 마스크 인덱스가 이깁니다.
"""

import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.core.exceptions import DomainError, GuardRefusalError, MaskUnavailableError
from src.core.mask import Mask, flip_element, mask_from_index
from src.optimization.channel_provider import ChannelProvider
from src.optimization.evaluator import FomEvaluator, ScoreFn
from src.signal_processing.fom import FomConfig

logger = logging.getLogger(__name__)

# 전수 탐색 허용 최대 소자 수 (2^24 평가)
EXHAUSTIVE_LIMIT = 24

TraceEntry = Tuple[int, float]


def _best_of(trace: Sequence[TraceEntry]) -> TraceEntry:
    """최대 FOM, 동률이면 최소 인덱스"""
    return min(trace, key=lambda item: (-item[1], item[0]))


def _worst_of(trace: Sequence[TraceEntry]) -> TraceEntry:
    """최소 FOM, 동률이면 최소 인덱스"""
    return min(trace, key=lambda item: (item[1], item[0]))


@dataclass(frozen=True)
class SearchResult:
    """
    탐색 결과

    Args:
        strategy: 전략 이름
        best_mask: 최고 FOM 마스크 (동률 시 최소 인덱스)
        best_fom: 최고 FOM
        trace: 평가 순서대로의 (마스크 인덱스, FOM)
        evaluations: 평가 횟수 (== len(trace))
        converged: 좌표 하강이 개선 없는 패스로 종료했는지 여부
        passes: 좌표 하강 패스 수 (다른 전략은 0)
    """

    strategy: str
    best_mask: Mask
    best_fom: float
    trace: Tuple[TraceEntry, ...]
    evaluations: int
    converged: bool = True
    passes: int = 0

    @property
    def n_elements(self) -> int:
        return self.best_mask.n

    @property
    def worst_mask(self) -> Mask:
        return mask_from_index(_worst_of(self.trace)[0], self.n_elements)

    @property
    def worst_fom(self) -> float:
        return _worst_of(self.trace)[1]

    def trace_frame(self) -> pd.DataFrame:
        """fom_trace.csv 형식의 DataFrame (order, mask_index, fom)"""
        return pd.DataFrame(
            {
                "order": np.arange(len(self.trace), dtype=np.int64),
                "mask_index": np.array([i for i, _ in self.trace], dtype=np.int64),
                "fom": np.array([v for _, v in self.trace], dtype=float),
            }
        )


def _make_result(
    strategy: str,
    trace: List[TraceEntry],
    n: int,
    converged: bool = True,
    passes: int = 0,
    best: Optional[TraceEntry] = None,
) -> SearchResult:
    if not trace:
        raise DomainError(f"{strategy} produced no evaluations")
    best_index, best_fom = best if best is not None else _best_of(trace)
    return SearchResult(
        strategy=strategy,
        best_mask=mask_from_index(best_index, n),
        best_fom=best_fom,
        trace=tuple(trace),
        evaluations=len(trace),
        converged=converged,
        passes=passes,
    )


def _evaluator(
    provider: ChannelProvider,
    cfg: FomConfig,
    threads: int,
    score_fn: Optional[ScoreFn],
    evaluator: Optional[FomEvaluator],
) -> FomEvaluator:
    if evaluator is not None:
        return evaluator
    return FomEvaluator(provider, cfg, threads=threads, score_fn=score_fn)


def baseline_masks(n: int) -> List[Mask]:
    """[all-off, all-on] 기준 마스크"""
    if n < 1:
        raise DomainError(f"baseline masks need at least 1 element, got {n}")
    return [Mask.all_off(n), Mask.all_on(n)]


def exhaustive_search(
    provider: ChannelProvider,
    cfg: FomConfig,
    *,
    threads: int = 1,
    score_fn: Optional[ScoreFn] = None,
    evaluator: Optional[FomEvaluator] = None,
) -> SearchResult:
    """
    사용 가능한 모든 마스크를 인덱스 오름차순으로 평가

    측정 공급자는 기록된 마스크만 열거합니다.

    Raises:
        GuardRefusalError: 시뮬레이션 공급자에서 N > 24인 경우
    """
    n = provider.n_elements
    indices = provider.available_indices()
    if indices is None:
        if n > EXHAUSTIVE_LIMIT:
            raise GuardRefusalError(
                f"exhaustive search over 2^{n} masks refused (limit N <= {EXHAUSTIVE_LIMIT}); "
                "use coordinate_descent instead"
            )
        indices = range(1 << n)
    else:
        indices = sorted(indices)

    masks = [mask_from_index(i, n) for i in indices]
    logger.info(f"🚀 전수 탐색 시작: {len(masks)}개 마스크 (N={n})")
    started = time.perf_counter()
    foms = _evaluator(provider, cfg, threads, score_fn, evaluator).evaluate_many(
        masks, label="exhaustive"
    )
    result = _make_result("exhaustive", [(m.index, v) for m, v in zip(masks, foms)], n)
    logger.info(
        f"✅ 전수 탐색 완료: best mask {result.best_mask.index} FOM {result.best_fom:.6f} "
        f"({time.perf_counter() - started:.1f}s)"
    )
    return result


def coordinate_descent(
    provider: ChannelProvider,
    start: Mask,
    max_sweeps: int,
    cfg: FomConfig,
    *,
    threads: int = 1,
    score_fn: Optional[ScoreFn] = None,
    evaluator: Optional[FomEvaluator] = None,
) -> SearchResult:
    """
    단일 소자 반전 좌표 하강

    패스마다 소자 0..N-1을 차례로 반전해 FOM이 엄격히 증가할 때만 채택합니다.
    개선 없는 패스가 나오거나 max_sweeps 패스를 채우면 종료합니다.
    측정 공급자에서 기록되지 않은 이웃은 건너뜁니다.
    한 패스 안에서 채택이 바로 반영되므로 반전 평가는 순차적입니다.
    threads는 평가기를 새로 만들 때만 쓰입니다.
    결과 마스크는 종료 시점의 현재 마스크입니다.

    Args:
        provider: 채널 공급자
        start: 시작 마스크
        max_sweeps: 최대 패스 수 (>= 1)
        cfg: FOM 설정

    Returns:
        SearchResult: trace는 메모 적중을 포함한 모든 평가 요청
    """
    if max_sweeps < 1:
        raise DomainError(f"max_sweeps must be >= 1, got {max_sweeps}")
    if start.n != provider.n_elements:
        raise DomainError(
            f"start mask has {start.n} elements but the provider has {provider.n_elements}"
        )
    if not provider.is_available(start):
        raise MaskUnavailableError(f"start mask {start.index} is not available")

    evaluator = _evaluator(provider, cfg, threads, score_fn, evaluator)
    current = start
    current_fom = evaluator.evaluate(current)
    trace: List[TraceEntry] = [(current.index, current_fom)]

    converged = False
    passes = 0
    for _ in range(max_sweeps):
        passes += 1
        improved = False
        for i in range(current.n):
            candidate = flip_element(current, i)
            if not provider.is_available(candidate):
                continue
            value = evaluator.evaluate(candidate)
            trace.append((candidate.index, value))
            if value > current_fom:
                current, current_fom = candidate, value
                improved = True
        logger.debug(f"패스 {passes}: mask {current.index} FOM {current_fom:.6f}")
        if not improved:
            converged = True
            break

    return _make_result(
        "coordinate_descent",
        trace,
        provider.n_elements,
        converged,
        passes,
        best=(current.index, current_fom),
    )


def _random_indices(provider: ChannelProvider, count: int, rng: np.random.Generator) -> List[int]:
    indices = provider.available_indices()
    if indices is None:
        return [int(i) for i in rng.integers(0, 1 << provider.n_elements, size=count)]
    pool = np.array(sorted(indices), dtype=np.int64)
    return [int(pool[j]) for j in rng.integers(0, len(pool), size=count)]


def multi_start_coordinate_descent(
    provider: ChannelProvider,
    starts: int,
    seed: int,
    max_sweeps: int,
    cfg: FomConfig,
    *,
    threads: int = 1,
    score_fn: Optional[ScoreFn] = None,
    evaluator: Optional[FomEvaluator] = None,
) -> SearchResult:
    """
    시드로 뽑은 여러 시작점에서 좌표 하강을 실행하고 최고 결과를 반환

    평가 메모는 모든 시작점이 공유하며 trace는 시작점 순서대로 이어 붙입니다.
    결과는 각 시작점의 종점 중 최고 FOM (동률이면 최소 인덱스)입니다.
    """
    if starts < 1:
        raise DomainError(f"starts must be >= 1, got {starts}")
    evaluator = _evaluator(provider, cfg, threads, score_fn, evaluator)
    rng = np.random.default_rng(seed)
    n = provider.n_elements

    trace: List[TraceEntry] = []
    endpoints: List[TraceEntry] = []
    converged = True
    passes = 0
    for start_index in _random_indices(provider, starts, rng):
        run = coordinate_descent(
            provider, mask_from_index(start_index, n), max_sweeps, cfg, evaluator=evaluator
        )
        trace.extend(run.trace)
        endpoints.append((run.best_mask.index, run.best_fom))
        converged = converged and run.converged
        passes += run.passes

    result = _make_result(
        "multi_start_coordinate_descent", trace, n, converged, passes, best=_best_of(endpoints)
    )
    logger.info(
        f"✅ 다중 시작 좌표 하강 완료: {starts} starts, best mask {result.best_mask.index} "
        f"FOM {result.best_fom:.6f}"
    )
    return result


def random_search(
    provider: ChannelProvider,
    n: int,
    seed: int,
    cfg: FomConfig,
    *,
    threads: int = 1,
    score_fn: Optional[ScoreFn] = None,
    evaluator: Optional[FomEvaluator] = None,
) -> SearchResult:
    """
    시드 고정 복원 추출 무작위 탐색

    측정 공급자는 기록된 마스크 중에서 뽑습니다. trace는 중복을 그대로 기록합니다.
    """
    if n < 1:
        raise DomainError(f"random search needs n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    n_elements = provider.n_elements
    masks = [mask_from_index(i, n_elements) for i in _random_indices(provider, n, rng)]
    foms = _evaluator(provider, cfg, threads, score_fn, evaluator).evaluate_many(
        masks, label="random"
    )
    return _make_result("random", [(m.index, v) for m, v in zip(masks, foms)], n_elements)
