# -*- coding: utf-8 -*-
"""
스윕/CIR/데이터셋 컨테이너 모듈

마스크별 주파수 응답(ChannelSweep), 시간 영역 임펄스 응답(Cir),
마스크-스윕 묶음(MaskSweepDataset)을 정의합니다. 모두 생성 후 불변입니다.
"""

from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from src.core.exceptions import DomainError
from src.core.frequency_grid import FrequencyGrid
from src.core.mask import Mask


def _frozen_complex(values: Iterable[complex]) -> np.ndarray:
    array = np.array(values, dtype=np.complex128).reshape(-1)
    array.setflags(write=False)
    return array


class ChannelSweep:
    """
    하나의 마스크에 대한 전달 함수 샘플 H(f)

    Args:
        grid: 주파수 그리드
        samples: 그리드 점마다 하나의 복소값 (무차원 전달비)
    """

    __slots__ = ("grid", "samples")

    def __init__(self, grid: FrequencyGrid, samples: Iterable[complex]):
        samples = _frozen_complex(samples)
        if samples.shape[0] != grid.count:
            raise DomainError(
                f"sweep has {samples.shape[0]} samples but the grid has {grid.count} points"
            )
        if not np.all(np.isfinite(samples)):
            raise DomainError("sweep samples must be finite (no NaN/Inf)")
        self.grid = grid
        self.samples = samples

    def __len__(self) -> int:
        return self.samples.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChannelSweep):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.samples, other.samples)

    def __hash__(self):
        return hash((self.grid, self.samples.tobytes()))

    def __repr__(self) -> str:
        return f"ChannelSweep(grid={self.grid}, samples=<{len(self)} complex>)"

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.samples)

    def restrict(self, i0: int, i1: int) -> "ChannelSweep":
        """인덱스 i0..i1 (포함) 구간으로 자른 스윕"""
        return ChannelSweep(self.grid.sub_grid(i0, i1), self.samples[i0 : i1 + 1])


class Cir:
    """
    균일 샘플링된 복소 채널 임펄스 응답

    샘플 시각은 t = 0, t_step, 2·t_step, ... 입니다.
    """

    __slots__ = ("t_step", "samples")

    def __init__(self, t_step: float, samples: Iterable[complex]):
        t_step = float(t_step)
        if not (np.isfinite(t_step) and t_step > 0):
            raise DomainError(f"t_step must be positive, got {t_step}")
        samples = _frozen_complex(samples)
        if samples.shape[0] < 2:
            raise DomainError("a CIR needs at least 2 samples")
        if not np.all(np.isfinite(samples)):
            raise DomainError("CIR samples must be finite")
        self.t_step = t_step
        self.samples = samples

    def __len__(self) -> int:
        return self.samples.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cir):
            return NotImplemented
        return self.t_step == other.t_step and np.array_equal(self.samples, other.samples)

    def __hash__(self):
        return hash((self.t_step, self.samples.tobytes()))

    def __repr__(self) -> str:
        return f"Cir(t_step={self.t_step:.4g}, samples=<{len(self)} complex>)"

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self)) * self.t_step

    @property
    def power(self) -> np.ndarray:
        return np.abs(self.samples) ** 2

    @property
    def energy(self) -> float:
        return float(np.sum(self.power))


class SweepOrigin(str, Enum):
    """데이터셋 출처 태그"""

    SIMULATED = "simulated"
    MEASURED = "measured"


class MaskSweepDataset:
    """
    마스크와 스윕의 병렬 목록

    모든 스윕은 동일한 그리드를 공유해야 하며 마스크 인덱스는 중복될 수 없습니다.

    Args:
        masks: 마스크 목록
        sweeps: masks와 같은 순서의 스윕 목록
        origin: simulated 또는 measured
    """

    def __init__(
        self,
        masks: Sequence[Mask],
        sweeps: Sequence[ChannelSweep],
        origin: SweepOrigin = SweepOrigin.SIMULATED,
    ):
        masks = tuple(masks)
        sweeps = tuple(sweeps)
        if len(masks) != len(sweeps):
            raise DomainError(
                f"dataset has {len(masks)} masks but {len(sweeps)} sweeps"
            )
        if not masks:
            raise DomainError("dataset must contain at least one mask")

        n = masks[0].n
        if any(m.n != n for m in masks):
            raise DomainError("all masks in a dataset must have the same element count")

        grid = sweeps[0].grid
        for position, sweep in enumerate(sweeps):
            if sweep.grid != grid:
                raise DomainError(
                    f"sweep #{position} grid {sweep.grid} differs from dataset grid {grid}"
                )

        self._position: Dict[int, int] = {}
        for position, mask in enumerate(masks):
            index = mask.index
            if index in self._position:
                raise DomainError(f"duplicate mask index {index} in dataset")
            self._position[index] = position

        self.masks = masks
        self.sweeps = sweeps
        self.origin = SweepOrigin(origin)
        self.grid = grid
        self.n_elements = n

    def __len__(self) -> int:
        return len(self.masks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MaskSweepDataset):
            return NotImplemented
        return (
            self.origin == other.origin
            and self.masks == other.masks
            and self.sweeps == other.sweeps
        )

    def __repr__(self) -> str:
        return (
            f"MaskSweepDataset({len(self)} masks, N={self.n_elements}, "
            f"grid={self.grid}, origin={self.origin.value})"
        )

    @property
    def indices(self) -> List[int]:
        return [m.index for m in self.masks]

    def contains(self, mask: Mask) -> bool:
        return mask.n == self.n_elements and mask.index in self._position

    def sweep_for(self, mask: Mask) -> Optional[ChannelSweep]:
        """마스크에 해당하는 스윕 (없으면 None)"""
        if mask.n != self.n_elements:
            return None
        position = self._position.get(mask.index)
        return None if position is None else self.sweeps[position]

    def magnitudes(self) -> np.ndarray:
        """(마스크 수, 그리드 점 수) 크기 행렬"""
        return np.abs(np.vstack([s.samples for s in self.sweeps]))
