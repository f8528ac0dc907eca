# -*- coding: utf-8 -*-
"""
주파수 그리드 모듈

스윕의 균일 주파수 축 (시작, 끝, 점 개수)을 정의합니다.
"""

import math
from dataclasses import dataclass
from typing import Any, Dict, List

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.core.exceptions import DomainError

# 기본 측정 대역: 5.7 ~ 6.1 GHz, 401점 (일반적인 VNA 설정)
DEFAULT_F_START = 5.7e9
DEFAULT_F_STOP = 6.1e9
DEFAULT_COUNT = 401


@dataclass(frozen=True)
class FrequencyGrid:
    """
    균일 주파수 그리드 [Hz]

    간격 Δf = (f_stop - f_start) / (count - 1)은 저장하지 않고 계산합니다.
    count == 1은 f_start == f_stop인 단일 주파수 그리드로만 허용합니다.
    """

    f_start: float
    f_stop: float
    count: int

    def __post_init__(self):
        object.__setattr__(self, "f_start", float(self.f_start))
        object.__setattr__(self, "f_stop", float(self.f_stop))
        if isinstance(self.count, bool) or int(self.count) != self.count:
            raise DomainError(f"grid count must be an integer, got {self.count!r}")
        object.__setattr__(self, "count", int(self.count))

        if not (math.isfinite(self.f_start) and math.isfinite(self.f_stop)):
            raise DomainError("grid endpoints must be finite")
        if self.f_start <= 0:
            raise DomainError(f"f_start must be positive, got {self.f_start}")
        if self.count == 1:
            if self.f_start != self.f_stop:
                raise DomainError("a single-point grid requires f_start == f_stop")
        elif self.count < 1:
            raise DomainError(f"grid count must be >= 2, got {self.count}")
        elif not self.f_start < self.f_stop:
            raise DomainError(
                f"f_start ({self.f_start}) must be below f_stop ({self.f_stop})"
            )

    @property
    def step(self) -> float:
        if self.count == 1:
            return 0.0
        return (self.f_stop - self.f_start) / (self.count - 1)

    def frequencies(self) -> np.ndarray:
        """주파수 배열 (float64). 첫/끝 값은 정확히 f_start/f_stop"""
        freqs = np.linspace(self.f_start, self.f_stop, self.count)
        freqs[-1] = self.f_stop
        return freqs

    def sub_grid(self, i0: int, i1: int) -> "FrequencyGrid":
        """
        인덱스 i0..i1 (양끝 포함) 구간의 부분 그리드

        Args:
            i0: 시작 인덱스
            i1: 끝 인덱스 (포함)

        Returns:
            FrequencyGrid: 끝점이 원래 그리드 점 위에 놓이는 부분 그리드
        """
        if not 0 <= i0 <= i1 < self.count:
            raise DomainError(
                f"sub-grid [{i0}, {i1}] out of range for a {self.count}-point grid"
            )
        freqs = self.frequencies()
        return FrequencyGrid(freqs[i0], freqs[i1], i1 - i0 + 1)

    def to_dict(self) -> Dict[str, Any]:
        return {"f_start": self.f_start, "f_stop": self.f_stop, "count": self.count}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FrequencyGrid":
        return cls(data["f_start"], data["f_stop"], data["count"])

    def __str__(self) -> str:
        return (
            f"{self.f_start / 1e9:.4f}-{self.f_stop / 1e9:.4f} GHz "
            f"({self.count} pts, step {self.step / 1e6:.4g} MHz)"
        )


DEFAULT_BAND = FrequencyGrid(DEFAULT_F_START, DEFAULT_F_STOP, DEFAULT_COUNT)


def grid_frequencies(grid: FrequencyGrid) -> List[float]:
    """그리드의 주파수 목록 [Hz]"""
    return [float(f) for f in grid.frequencies()]


class GridConfig(BaseModel):
    """설정/매니페스트 파일의 그리드 섹션"""

    model_config = ConfigDict(extra="forbid")

    f_start: float = DEFAULT_F_START
    f_stop: float = DEFAULT_F_STOP
    count: int = DEFAULT_COUNT

    @model_validator(mode="after")
    def _check_grid(self) -> "GridConfig":
        try:
            self.to_grid()
        except DomainError as e:
            raise ValueError(str(e)) from e
        return self

    def to_grid(self) -> FrequencyGrid:
        return FrequencyGrid(self.f_start, self.f_stop, self.count)

    @classmethod
    def from_grid(cls, grid: FrequencyGrid) -> "GridConfig":
        return cls(**grid.to_dict())
