# -*- coding: utf-8 -*-
"""
현장 특성화 모듈

마스크에 따른 주파수별 응답 변동(표준편차)을 구하고,
변동이 큰 연속 대역을 운용 대역으로 선택합니다.
"""

import logging
from typing import Literal, Tuple

import numpy as np

from src.core.exceptions import DomainError, NoSensitiveBandError
from src.core.frequency_grid import FrequencyGrid
from src.core.sweep import MaskSweepDataset

logger = logging.getLogger(__name__)

DEFAULT_BAND_FRACTION = 0.5


def mask_std(
    dataset: MaskSweepDataset,
    scale: Literal["linear", "db"] = "linear",
    ddof: int = 0,
) -> np.ndarray:
    """
    주파수별 |H| 표준편차 (마스크 축)

    Args:
        dataset: 마스크-스윕 데이터셋
        scale: linear(기본) 또는 db (20·log10|H|)
        ddof: 0이면 모집단(기본), 1이면 표본 표준편차

    Returns:
        np.ndarray: 길이 grid.count, 모든 값 >= 0
    """
    if scale not in ("linear", "db"):
        raise DomainError(f"unknown magnitude scale {scale!r}")
    magnitudes = dataset.magnitudes()
    if len(dataset) <= ddof:
        return np.zeros(dataset.grid.count)
    if scale == "db":
        magnitudes = 20.0 * np.log10(np.maximum(magnitudes, np.finfo(float).tiny))
    return np.std(magnitudes, axis=0, ddof=ddof)


def select_band_indices(std: np.ndarray, fraction: float = DEFAULT_BAND_FRACTION) -> Tuple[int, int]:
    """
    std >= fraction·max(std) 인 모든 점을 포함하는 최소 연속 구간 (양끝 포함)

    Raises:
        NoSensitiveBandError: std가 모두 0인 경우
    """
    std = np.asarray(std, dtype=float)
    if not 0.0 < fraction <= 1.0:
        raise DomainError(f"fraction must lie in (0, 1], got {fraction}")
    peak = float(np.max(std)) if std.size else 0.0
    if peak <= 0.0:
        raise NoSensitiveBandError("no mask-sensitive band")
    selected = np.flatnonzero(std >= fraction * peak)
    return int(selected[0]), int(selected[-1])


def select_band(
    std: np.ndarray, grid: FrequencyGrid, fraction: float = DEFAULT_BAND_FRACTION
) -> FrequencyGrid:
    """
    마스크 민감 대역을 부분 그리드로 반환

    Args:
        std: 주파수별 표준편차 (길이 grid.count)
        grid: 원래 그리드
        fraction: 최대값 대비 임계 비율 (0, 1]

    Returns:
        FrequencyGrid: 끝점이 그리드 점 위에 놓이는 부분 대역
    """
    if len(std) != grid.count:
        raise DomainError(f"std has {len(std)} values but the grid has {grid.count} points")
    i0, i1 = select_band_indices(std, fraction)
    band = grid.sub_grid(i0, i1)
    logger.info(f"📊 선택 대역: {band} (인덱스 {i0}..{i1})")
    return band
