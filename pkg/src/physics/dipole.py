# -*- coding: utf-8 -*-
"""
쌍극자 명세 및 Lorentzian 편극률 모듈

벽, RIS 소자, 안테나를 2D 점 쌍극자로 기술하고
다이오드 상태에 따른 편극률 α(f)를 계산합니다.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple, Union

import numpy as np

from src.core.exceptions import DomainError


class DipoleKind(str, Enum):
    WALL = "wall"
    RIS = "ris"
    ANTENNA = "antenna"


@dataclass(frozen=True)
class DipoleSpec:
    """
    점 쌍극자 명세

    Args:
        position: (x, y) 위치 [m]
        kind: wall / ris / antenna
        resonance_off: 다이오드 off 상태(또는 RIS가 아닌 경우)의 공진 주파수 [Hz]
        resonance_on: 다이오드 on 상태의 공진 주파수 [Hz] (ris는 resonance_off 이하)
        linewidth: 선폭 γ [Hz]
        coupling_strength: 결합 세기 (0이면 산란하지 않음)
    """

    position: Tuple[float, float]
    kind: DipoleKind
    resonance_off: float
    resonance_on: float
    linewidth: float
    coupling_strength: float

    def __post_init__(self):
        object.__setattr__(self, "kind", DipoleKind(self.kind))
        object.__setattr__(
            self, "position", (float(self.position[0]), float(self.position[1]))
        )
        if not np.all(np.isfinite(self.position)):
            raise DomainError(f"dipole position must be finite, got {self.position}")
        if self.linewidth <= 0:
            raise DomainError(f"linewidth must be positive, got {self.linewidth}")
        if self.resonance_off <= 0 or self.resonance_on <= 0:
            raise DomainError("resonance frequencies must be positive")
        if self.coupling_strength < 0:
            raise DomainError(
                f"coupling_strength must be >= 0, got {self.coupling_strength}"
            )
        if self.kind is DipoleKind.RIS and self.resonance_on > self.resonance_off:
            raise DomainError(
                "ris dipoles need resonance_on <= resonance_off (biasing shifts the resonance down)"
            )

    @property
    def tunable(self) -> bool:
        return self.kind is DipoleKind.RIS

    def resonance(self, state: int) -> float:
        """상태별 공진 주파수. RIS가 아니면 항상 resonance_off"""
        if self.tunable and state:
            return self.resonance_on
        return self.resonance_off


def lorentzian(
    coupling_strength: Union[float, np.ndarray],
    resonance: Union[float, np.ndarray],
    linewidth: Union[float, np.ndarray],
    f: Union[float, np.ndarray],
) -> np.ndarray:
    """α = s·fr² / (fr² − f² − i·f·γ), 인자는 브로드캐스트됩니다."""
    resonance_sq = np.square(resonance)
    return coupling_strength * resonance_sq / (
        resonance_sq - np.square(f) - 1j * f * linewidth
    )


def polarizability_spectrum(spec: DipoleSpec, state: int, freqs: np.ndarray) -> np.ndarray:
    """주파수 배열에 대한 편극률 (complex128)"""
    freqs = np.asarray(freqs, dtype=float)
    if np.any(freqs <= 0):
        raise DomainError("frequencies must be positive")
    return lorentzian(
        spec.coupling_strength, spec.resonance(state), spec.linewidth, freqs
    ).astype(np.complex128)


def polarizability(spec: DipoleSpec, state: int, f: float) -> complex:
    """
    단일 주파수 편극률

    Args:
        spec: 쌍극자 명세
        state: 다이오드 상태 (0 off, 1 on)
        f: 주파수 [Hz]

    Returns:
        complex: α(f), Im(α) >= 0
    """
    if f <= 0:
        raise DomainError(f"frequency must be positive, got {f}")
    return complex(polarizability_spectrum(spec, state, np.array([f]))[0])


def passivity_floor(coupling_strength: float, resonance: float, linewidth: float) -> float:
    """
    2D 산란체가 수동(passive)으로 남는 최소 주파수 [Hz]

    Im(1/α) = -f·γ / (κ·f_r²) 이므로 Im(1/α) <= -1/4 는 f >= κ·f_r² / (4γ) 와 같습니다.
    """
    return coupling_strength * resonance**2 / (4.0 * linewidth)
