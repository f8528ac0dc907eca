# -*- coding: utf-8 -*-
"""
SVG 플롯 모듈

FOM 추이, CIR 비교, 주파수별 표준편차를 독립 SVG 파일로 저장합니다.
타임스탬프 메타데이터를 생략하고 해시 솔트를 고정해 같은 입력이면 같은 파일이 나옵니다.
"""

import logging
from pathlib import Path
from typing import Dict, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402

logger = logging.getLogger(__name__)

SVG_METADATA = {"Date": None, "Creator": None}


def _save_svg(fig, path: Path) -> Path:
    with plt.rc_context({"svg.hashsalt": "ris-cir", "svg.fonttype": "none"}):
        fig.savefig(path, format="svg", metadata=SVG_METADATA, bbox_inches="tight")
    plt.close(fig)
    logger.info(f"SVG 저장: {path}")
    return path


def plot_fom_trace(trace: pd.DataFrame, path: Path, title: str = "FOM vs mask") -> Path:
    """평가 순서에 따른 FOM 추이"""
    fig, ax = plt.subplots(figsize=(8, 3.5))
    ax.plot(trace["order"], trace["fom"], linewidth=0.6, color="tab:blue")
    ax.set_xlabel("evaluation order")
    ax.set_ylabel("FOM")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    return _save_svg(fig, path)


def plot_cir_overlay(
    cirs: Dict[str, pd.DataFrame], path: Path, cutoff: Optional[float] = None
) -> Path:
    """
    라벨별 |CIR|² 비교 (각 곡선은 자기 최대값으로 정규화, dB)

    Args:
        cirs: 라벨 → t_s, abs2 열을 가진 DataFrame
        path: 출력 경로
        cutoff: x축 상한 [s]
    """
    fig, ax = plt.subplots(figsize=(8, 4))
    for label, frame in cirs.items():
        power = frame["abs2"].to_numpy()
        peak = power.max() if power.size and power.max() > 0 else 1.0
        level = 10.0 * np.log10(np.maximum(power / peak, 1e-12))
        ax.plot(frame["t_s"].to_numpy() * 1e9, level, linewidth=0.8, label=label)
    if cutoff is not None:
        ax.set_xlim(0.0, cutoff * 1e9)
    ax.set_ylim(-60.0, 3.0)
    ax.set_xlabel("time [ns]")
    ax.set_ylabel("|CIR|² [dB, normalized]")
    ax.legend(loc="upper right")
    ax.grid(True, alpha=0.3)
    return _save_svg(fig, path)


def plot_std_vs_freq(
    frame: pd.DataFrame, path: Path, band: Optional[tuple] = None
) -> Path:
    """주파수별 마스크 표준편차와 선택 대역"""
    fig, ax = plt.subplots(figsize=(8, 3.5))
    ax.plot(frame["freq_hz"] / 1e9, frame.iloc[:, 1], color="tab:red", linewidth=0.9)
    if band is not None:
        ax.axvspan(band[0] / 1e9, band[1] / 1e9, color="tab:green", alpha=0.15)
    ax.set_xlabel("frequency [GHz]")
    ax.set_ylabel(f"std ({frame.columns[1]})")
    ax.grid(True, alpha=0.3)
    return _save_svg(fig, path)
