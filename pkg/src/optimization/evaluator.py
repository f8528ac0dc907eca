# -*- coding: utf-8 -*-
"""
마스크 평가기 모듈

스윕 → CIR → FOM 파이프라인을 마스크 단위로 실행하고,
탐색 실행 동안 (마스크 → FOM) 결과를 메모이즈합니다.
여러 마스크는 스레드 풀에서 병렬로 평가하되 결과 순서는 제출 순서를 따릅니다.
"""

import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional

from src.core.exceptions import NumericalError
from src.core.mask import Mask
from src.optimization.channel_provider import ChannelProvider
from src.signal_processing.fom import FomConfig, cir_from_sweep, fom

logger = logging.getLogger(__name__)

ScoreFn = Callable[[Mask], float]

# 진행 로그를 남기는 청크 크기
PROGRESS_CHUNK = 4096


def resolve_threads(threads: int) -> int:
    """0이면 CPU 코어 수"""
    if threads is None or threads <= 0:
        return os.cpu_count() or 1
    return int(threads)


def evaluate_mask(provider: ChannelProvider, mask: Mask, cfg: FomConfig) -> float:
    """
    마스크 하나의 FOM

    Args:
        provider: 채널 공급자
        mask: 평가할 마스크
        cfg: FOM 설정

    Returns:
        float: fom(cir_from_sweep(provider(mask)))
    """
    sweep = provider.get_sweep(mask)
    try:
        return fom(cir_from_sweep(sweep, cfg), cfg)
    except NumericalError as e:
        if e.mask_index is not None:
            raise
        raise type(e)(
            e.detail,
            frequency=e.frequency,
            frequency_index=e.frequency_index,
            mask_index=mask.index,
        ) from e


@dataclass
class EvaluatorStats:
    requested: int = 0
    computed: int = 0
    elapsed: float = 0.0

    @property
    def cache_hits(self) -> int:
        return self.requested - self.computed

    def as_dict(self) -> Dict[str, float]:
        return {
            "requested": self.requested,
            "computed": self.computed,
            "cache_hits": self.cache_hits,
            "elapsed_s": round(self.elapsed, 3),
        }


class FomEvaluator:
    """
    메모이즈된 FOM 평가기

    Args:
        provider: 채널 공급자
        cfg: FOM 설정
        threads: 병렬 스레드 수 (0 = 자동, 1 = 순차)
        score_fn: 마스크 → 점수 함수를 직접 지정할 때 사용 (기본: evaluate_mask)
    """

    def __init__(
        self,
        provider: ChannelProvider,
        cfg: FomConfig,
        threads: int = 1,
        score_fn: Optional[ScoreFn] = None,
    ):
        self.provider = provider
        self.cfg = cfg
        self.threads = resolve_threads(threads)
        self._score_fn = score_fn or (lambda mask: evaluate_mask(provider, mask, cfg))
        self._memo: Dict[int, float] = {}
        self._lock = threading.Lock()
        self.stats = EvaluatorStats()

    def _lookup(self, mask: Mask) -> Optional[float]:
        with self._lock:
            self.stats.requested += 1
            return self._memo.get(mask.index)

    def _store(self, mask: Mask, value: float, elapsed: float) -> None:
        with self._lock:
            if mask.index not in self._memo:
                self.stats.computed += 1
                self._memo[mask.index] = value
            self.stats.elapsed += elapsed

    def evaluate(self, mask: Mask) -> float:
        """마스크 하나 평가 (메모 우선)"""
        cached = self._lookup(mask)
        if cached is not None:
            return cached
        started = time.perf_counter()
        value = float(self._score_fn(mask))
        self._store(mask, value, time.perf_counter() - started)
        return value

    def evaluate_many(self, masks: Iterable[Mask], label: str = "") -> List[float]:
        """
        여러 마스크 평가

        Args:
            masks: 마스크 목록
            label: 진행 로그 접두어

        Returns:
            List[float]: 입력 순서와 같은 순서의 FOM 목록
        """
        masks = list(masks)
        total = len(masks)
        results: List[float] = []
        if self.threads <= 1 or total <= 1:
            for start in range(0, total, PROGRESS_CHUNK):
                results.extend(self.evaluate(m) for m in masks[start : start + PROGRESS_CHUNK])
                self._log_progress(label, len(results), total)
            return results

        with ThreadPoolExecutor(max_workers=self.threads) as executor:
            for start in range(0, total, PROGRESS_CHUNK):
                chunk = masks[start : start + PROGRESS_CHUNK]
                results.extend(executor.map(self.evaluate, chunk))
                self._log_progress(label, len(results), total)
        return results

    def _log_progress(self, label: str, done: int, total: int) -> None:
        if total > PROGRESS_CHUNK:
            logger.info(f"📊 {label or 'evaluate'}: {done}/{total} ({done / total:.0%})")
