# -*- coding: utf-8 -*-
"""
채널 공급자 추상 클래스 모듈

마스크를 받아 고정 그리드 위의 ChannelSweep을 돌려주는 공급자를 정의합니다.
시뮬레이션 장면과 측정 데이터셋을 같은 탐색 전략에서 사용할 수 있게 합니다.
"""

import logging
import threading
from abc import ABCMeta, abstractmethod
from typing import List, Optional

from src.core.exceptions import DomainError, MaskUnavailableError
from src.core.frequency_grid import FrequencyGrid
from src.core.mask import Mask
from src.core.sweep import ChannelSweep, MaskSweepDataset, SweepOrigin
from src.physics.foldy_lax import ChannelKernel, compute_kernel
from src.physics.scene import Scene

logger = logging.getLogger(__name__)


class ChannelProvider(metaclass=ABCMeta):
    """
    채널 공급자 추상 기본 클래스

    같은 마스크에는 항상 같은 스윕을 돌려줘야 합니다 (순수, 메모이즈 가능).
    하위 클래스는 `_fetch_sweep`만 구현하면 되고, 측정 공급자는
    `available_indices`로 기록된 마스크만 노출합니다.
    """

    def __init__(self, name: str, grid: FrequencyGrid, n_elements: int):
        self.name = name
        self.grid = grid
        self.n_elements = n_elements

    @property
    def origin(self) -> SweepOrigin:
        return SweepOrigin.SIMULATED

    def available_indices(self) -> Optional[List[int]]:
        """기록된 마스크 인덱스 (오름차순). None이면 2^N 전체 사용 가능"""
        return None

    @property
    def total_masks(self) -> int:
        indices = self.available_indices()
        return (1 << self.n_elements) if indices is None else len(indices)

    def is_available(self, mask: Mask) -> bool:
        if mask.n != self.n_elements:
            return False
        indices = self.available_indices()
        return indices is None or mask.index in set(indices)

    def get_sweep(self, mask: Mask) -> ChannelSweep:
        """
        마스크의 스윕 조회

        Raises:
            DomainError: 마스크 길이가 공급자의 소자 수와 다른 경우
            MaskUnavailableError: 기록되지 않은 마스크인 경우
        """
        if mask.n != self.n_elements:
            raise DomainError(
                f"mask has {mask.n} elements but provider '{self.name}' has {self.n_elements}"
            )
        return self._fetch_sweep(mask)

    @abstractmethod
    def _fetch_sweep(self, mask: Mask) -> ChannelSweep:
        """(하위 클래스 구현 필수) 마스크 길이가 검증된 뒤 호출됩니다."""

    def log_info(self, message: str):
        logger.info(f"[{self.name}] {message}")

    def log_debug(self, message: str):
        logger.debug(f"[{self.name}] {message}")

    def log_warning(self, message: str):
        logger.warning(f"[{self.name}] {message}")

    def __str__(self) -> str:
        return f"{type(self).__name__}({self.name}, N={self.n_elements}, masks={self.total_masks})"


class SceneChannelProvider(ChannelProvider):
    """
    물리 모델 공급자

    커널은 첫 요청 때 한 번 계산되며 이후 평가는 RIS 축약 시스템만 풉니다.
    """

    def __init__(self, scene: Scene, grid: FrequencyGrid, name: str = "scene"):
        super().__init__(name, grid, scene.n_elements)
        self.scene = scene
        self._kernel: Optional[ChannelKernel] = None
        self._lock = threading.Lock()

    @property
    def kernel(self) -> ChannelKernel:
        with self._lock:
            if self._kernel is None:
                self.log_info(f"🚀 커널 계산 시작: {self.grid}")
                self._kernel = compute_kernel(self.scene, self.grid)
                self.log_info("✅ 커널 계산 완료")
            return self._kernel

    def _fetch_sweep(self, mask: Mask) -> ChannelSweep:
        return ChannelSweep(self.grid, self.kernel.evaluate(mask))


class DatasetChannelProvider(ChannelProvider):
    """기록된 마스크만 제공하는 측정 데이터 공급자"""

    def __init__(self, dataset: MaskSweepDataset, name: str = "archive"):
        super().__init__(name, dataset.grid, dataset.n_elements)
        self.dataset = dataset
        self._indices = sorted(dataset.indices)
        self._index_set = set(self._indices)

    @property
    def origin(self) -> SweepOrigin:
        return self.dataset.origin

    def available_indices(self) -> Optional[List[int]]:
        return list(self._indices)

    def is_available(self, mask: Mask) -> bool:
        return mask.n == self.n_elements and mask.index in self._index_set

    def _fetch_sweep(self, mask: Mask) -> ChannelSweep:
        sweep = self.dataset.sweep_for(mask)
        if sweep is None:
            raise MaskUnavailableError(
                f"mask {mask.index} was not recorded in '{self.name}'"
            )
        return sweep
