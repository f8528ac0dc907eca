# -*- coding: utf-8 -*-
"""
CIR 추출 및 FOM 계산 모듈

대역 제한 스윕을 역 DFT해 기저대역 CIR을 만들고,
주 피크 창(Δt) 안의 전력 비율(FOM)과 RMS 지연 확산을 계산합니다.
적분은 균일 샘플 위의 사각형 규칙이며, 비율에서 t_step은 약분됩니다.
"""

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.signal import windows

from src.core.exceptions import DomainError, ZeroEnergyError
from src.core.sweep import ChannelSweep, Cir

logger = logging.getLogger(__name__)

# 샘플 시각 비교 시 부동소수점 여유
_TIME_TOLERANCE = 1e-9


class FomConfig(BaseModel):
    """FOM 계산 설정"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    window: float = Field(0.286e-9, gt=0)  # Δt [s]
    cutoff: float = Field(50e-9, gt=0)  # t_max [s]
    zero_pad_factor: int = Field(16, ge=1)
    spectral_window: Literal["rectangular", "hann"] = "rectangular"

    @model_validator(mode="after")
    def _check_window(self) -> "FomConfig":
        if not self.window < self.cutoff:
            raise ValueError(f"window ({self.window}) must be shorter than cutoff ({self.cutoff})")
        return self


@dataclass(frozen=True)
class PeakInfo:
    """
    주 피크 정보

    Args:
        t_o: 피크 시각 [s]
        peak_index: 샘플 인덱스
        peak_power: |CIR(t_o)|²
    """

    t_o: float
    peak_index: int
    peak_power: float


def spectral_taper(kind: str, count: int) -> np.ndarray:
    """스펙트럼 창 계수"""
    if kind == "hann":
        return windows.hann(count, sym=True)
    return np.ones(count)


def cir_from_sweep(sweep: ChannelSweep, cfg: FomConfig) -> Cir:
    """
    스윕을 기저대역 CIR로 변환

    대역 중심이 0 Hz가 되도록 위상을 보정하며, 스케일은
    CIR[n] = (1/K)·Σ_k X_k·exp(i2π(f_k − f_c)·n·t_step) 입니다.
    사각형 창에서 Σ|CIR|² / zero_pad_factor == Σ|X|² / K (Parseval).

    Args:
        sweep: 채널 스윕 (2점 이상)
        cfg: FOM 설정

    Returns:
        Cir: t_step = 1 / (zero_pad_factor · K · Δf)
    """
    count = len(sweep)
    if count < 2:
        raise DomainError("CIR extraction needs a sweep of at least 2 points")
    length = cfg.zero_pad_factor * count
    weighted = sweep.samples * spectral_taper(cfg.spectral_window, count)

    n = np.arange(length)
    envelope = np.exp(-1j * np.pi * (count - 1) * n / length)
    samples = np.fft.ifft(weighted, n=length) * (length / count) * envelope

    t_step = 1.0 / (length * sweep.grid.step)
    return Cir(t_step, samples)


def cutoff_index(cir: Cir, cfg: FomConfig) -> int:
    """t <= cutoff 를 만족하는 마지막 샘플 인덱스"""
    last = int(math.floor(cfg.cutoff / cir.t_step * (1.0 + _TIME_TOLERANCE)))
    return min(last, len(cir) - 1)


def find_peak(cir: Cir, cfg: FomConfig) -> PeakInfo:
    """
    [0, cutoff] 구간의 최대 전력 샘플 (동률이면 가장 이른 시각)

    Raises:
        ZeroEnergyError: 구간 내 전력이 모두 0인 경우
    """
    power = cir.power[: cutoff_index(cir, cfg) + 1]
    peak_index = int(np.argmax(power))
    peak_power = float(power[peak_index])
    if peak_power <= 0.0:
        raise ZeroEnergyError("CIR has no energy within the cutoff")
    return PeakInfo(
        t_o=peak_index * cir.t_step, peak_index=peak_index, peak_power=peak_power
    )


def fom(cir: Cir, cfg: FomConfig) -> float:
    """
    주 피크 창 전력 / cutoff까지의 전체 전력

    창은 |t − t_o| <= Δt/2 (폐구간)이고 [0, cutoff]로 잘립니다.

    Returns:
        float: (0, 1] 범위의 FOM
    """
    peak = find_peak(cir, cfg)
    last = cutoff_index(cir, cfg)
    power = cir.power[: last + 1]

    half = int(math.floor(cfg.window / 2.0 / cir.t_step * (1.0 + _TIME_TOLERANCE)))
    lo = max(0, peak.peak_index - half)
    hi = min(last, peak.peak_index + half)

    total = float(np.sum(power))
    if total <= 0.0:
        raise ZeroEnergyError("CIR has no energy within the cutoff")
    return float(np.sum(power[lo : hi + 1])) / total


def delay_spread(cir: Cir, cfg: FomConfig) -> float:
    """
    RMS 지연 확산 [s] (t <= cutoff 구간)

    Raises:
        ZeroEnergyError: 에너지가 0인 경우
    """
    last = cutoff_index(cir, cfg)
    power = cir.power[: last + 1]
    total = float(np.sum(power))
    if total <= 0.0:
        raise ZeroEnergyError("CIR has no energy within the cutoff")
    times = np.arange(last + 1) * cir.t_step
    mean = float(np.sum(power * times)) / total
    variance = float(np.sum(power * (times - mean) ** 2)) / total
    return math.sqrt(max(variance, 0.0))
