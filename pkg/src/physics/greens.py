# -*- coding: utf-8 -*-
"""
2D 스칼라 자유공간 Green 함수 모듈

G(r1, r2) = (i/4)·H₀⁽¹⁾(k·|r1 − r2|),  k = 2πf/c
"""

from typing import Sequence

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.spatial.distance import cdist
from scipy.special import hankel1

from src.core.exceptions import DomainError, SingularityError

# 최소 쌍극자 간격 [m]
EPS_GEOM = 1e-6


def wavenumber(f):
    return 2.0 * np.pi * np.asarray(f, dtype=float) / SPEED_OF_LIGHT


def greens_from_distance(distance, f) -> np.ndarray:
    """
    거리 배열에 대한 Green 함수 (브로드캐스트)

    거리 0 원소는 0으로 채웁니다. 상호작용 행렬의 대각 성분에 사용합니다.
    """
    distance = np.asarray(distance, dtype=float)
    k = wavenumber(f)
    safe = np.where(distance > 0, distance, 1.0)
    values = 0.25j * hankel1(0, k * safe)
    return np.where(distance > 0, values, 0.0).astype(np.complex128)


def greens_2d(r1: Sequence[float], r2: Sequence[float], f: float) -> complex:
    """
    두 점 사이의 Green 함수

    Args:
        r1: 첫 번째 위치 (x, y) [m]
        r2: 두 번째 위치 (x, y) [m]
        f: 주파수 [Hz]

    Returns:
        complex: (i/4)·H₀⁽¹⁾(k·d)
    """
    if f <= 0:
        raise DomainError(f"frequency must be positive, got {f}")
    distance = float(distance_matrix(r1, r2)[0, 0])
    if distance < EPS_GEOM:
        raise SingularityError(
            f"Green's function is singular for coincident points (d={distance:.3g} m)",
            frequency=f,
        )
    return complex(greens_from_distance(distance, f))


def distance_matrix(points_a: np.ndarray, points_b: np.ndarray) -> np.ndarray:
    """(A, 2)와 (B, 2) 위치 사이의 거리 행렬 (A, B)"""
    points_a = np.asarray(points_a, dtype=float).reshape(-1, 2)
    points_b = np.asarray(points_b, dtype=float).reshape(-1, 2)
    if not (len(points_a) and len(points_b)):
        return np.zeros((len(points_a), len(points_b)))
    return cdist(points_a, points_b)
