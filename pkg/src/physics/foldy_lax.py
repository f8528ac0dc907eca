# -*- coding: utf-8 -*-
"""
Foldy–Lax 결합 쌍극자 채널 계산 모듈

산란체 장 e는 e = a + G·D·e 를 만족합니다.
(a: tx 입사장, G: 대각 0인 Green 행렬, D: 편극률 대각 행렬)
채널은 H = G(rx, tx) + Σ_m G(rx, m)·α_m·e_m 입니다.

마스크와 무관한 고정 산란체(벽, 클러터, 산란 안테나)는 주파수마다 한 번만
분해해 두고, 마스크별 평가에서는 RIS 소자 N×N 축약 시스템만 풉니다.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from src.core.exceptions import DomainError, NumericalError, SingularityError
from src.core.frequency_grid import FrequencyGrid
from src.core.mask import Mask
from src.core.sweep import ChannelSweep
from src.physics.dipole import lorentzian
from src.physics.greens import distance_matrix, greens_from_distance
from src.physics.scene import Scene

logger = logging.getLogger(__name__)

# 1-노름 조건수 상한
CONDITION_LIMIT = 1e12


def _alpha_table(scene: Scene, indices, freqs: np.ndarray, state: int) -> np.ndarray:
    """(주파수 수, len(indices)) 편극률 표"""
    if not len(indices):
        return np.zeros((freqs.shape[0], 0), dtype=np.complex128)
    specs = [scene.dipoles[i] for i in indices]
    strength = np.array([s.coupling_strength for s in specs])
    resonance = np.array([s.resonance(state) for s in specs])
    linewidth = np.array([s.linewidth for s in specs])
    return lorentzian(
        strength[None, :], resonance[None, :], linewidth[None, :], freqs[:, None]
    ).astype(np.complex128)


def _check_condition(cond: float, message: str, **context) -> None:
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise NumericalError(f"{message}: condition number {cond:.3g} exceeds {CONDITION_LIMIT:.0e}", **context)


@dataclass(frozen=True)
class ChannelKernel:
    """
    한 장면과 그리드에 대해 미리 계산된 마스크 독립 항

    축약 시스템 (I − Q·α_R) e_R = u 를 풀어
    H = h0 + Σ v·α_R·e_R 로 채널을 얻습니다.
    """

    grid: FrequencyGrid
    n_elements: int
    h0: np.ndarray  # (K,)
    u: np.ndarray  # (K, N)
    q: np.ndarray  # (K, N, N)
    v: np.ndarray  # (K, N)
    alpha_off: np.ndarray  # (K, N)
    alpha_on: np.ndarray  # (K, N)

    def evaluate(self, mask: Mask, amplitude: float = 1.0) -> np.ndarray:
        """
        마스크 하나에 대한 채널 샘플

        Args:
            mask: RIS 마스크 (길이 == n_elements)
            amplitude: 입사장 진폭 배율

        Returns:
            np.ndarray: (K,) 복소 채널
        """
        if mask.n != self.n_elements:
            raise DomainError(
                f"mask has {mask.n} elements but the scene has {self.n_elements} RIS elements"
            )
        if self.n_elements == 0:
            return amplitude * self.h0

        state = mask.as_array()
        alpha = np.where(state[None, :], self.alpha_on, self.alpha_off)
        identity = np.eye(self.n_elements, dtype=np.complex128)
        reduced = identity[None, :, :] - self.q * alpha[:, None, :]

        cond = np.linalg.cond(reduced, 1)
        bad = np.flatnonzero(~np.isfinite(cond) | (cond > CONDITION_LIMIT))
        if bad.size:
            j = int(bad[0])
            _check_condition(
                float(cond[j]),
                "reduced RIS system is singular",
                frequency=float(self.grid.frequencies()[j]),
                frequency_index=j,
                mask_index=mask.index,
            )

        fields = np.linalg.solve(reduced, (amplitude * self.u)[..., None])[..., 0]
        return amplitude * self.h0 + np.sum(self.v * alpha * fields, axis=1)


def compute_kernel(scene: Scene, grid: FrequencyGrid) -> ChannelKernel:
    """
    고정 산란체를 주파수별로 LU 분해해 축약 커널을 만듭니다.

    Args:
        scene: 장면
        grid: 주파수 그리드

    Returns:
        ChannelKernel: 마스크별 평가에 쓰는 커널
    """
    freqs = grid.frequencies()
    positions = scene.positions
    fixed = scene.fixed_indices()
    ris = list(scene.ris_order)
    n_fixed, n_ris = len(fixed), len(ris)

    # 송신원은 자기 자신을, 수신 프로브는 자기 장을 보지 않음
    incident_mask = np.array([i != scene.tx for i in fixed + ris])
    probe_mask = np.array([i != scene.rx for i in fixed + ris])

    tx_pos, rx_pos = positions[scene.tx], positions[scene.rx]
    d_direct = distance_matrix(rx_pos, tx_pos)[0, 0]
    d_tx = distance_matrix(positions[fixed + ris], tx_pos)[:, 0]
    d_rx = distance_matrix(positions[fixed + ris], rx_pos)[:, 0]
    d_ff = distance_matrix(positions[fixed], positions[fixed])
    d_fr = distance_matrix(positions[fixed], positions[ris])
    d_rr = distance_matrix(positions[ris], positions[ris])

    alpha_fixed = _alpha_table(scene, fixed, freqs, 0)
    alpha_off = _alpha_table(scene, ris, freqs, 0)
    alpha_on = _alpha_table(scene, ris, freqs, 1)

    count = grid.count
    h0 = np.empty(count, dtype=np.complex128)
    u = np.empty((count, n_ris), dtype=np.complex128)
    q = np.empty((count, n_ris, n_ris), dtype=np.complex128)
    v = np.empty((count, n_ris), dtype=np.complex128)

    for j, f in enumerate(freqs):
        if d_direct == 0:
            raise SingularityError("tx and rx coincide", frequency=float(f), frequency_index=j)
        direct = greens_from_distance(d_direct, f)[()]
        a = np.where(incident_mask, greens_from_distance(d_tx, f), 0.0)
        b = np.where(probe_mask, greens_from_distance(d_rx, f), 0.0)
        a_f, a_r = a[:n_fixed], a[n_fixed:]
        b_f, b_r = b[:n_fixed], b[n_fixed:]
        g_rr = greens_from_distance(d_rr, f)

        if n_fixed == 0:
            h0[j] = direct
            u[j] = a_r
            q[j] = g_rr
            v[j] = b_r
            continue

        g_ff = greens_from_distance(d_ff, f)
        g_fr = greens_from_distance(d_fr, f)
        d_f = alpha_fixed[j]

        system = np.eye(n_fixed, dtype=np.complex128) - g_ff * d_f[None, :]
        lu_piv = scipy.linalg.lu_factor(system, check_finite=False)
        inverse = scipy.linalg.lu_solve(lu_piv, np.eye(n_fixed, dtype=np.complex128))
        cond = np.linalg.norm(system, 1) * np.linalg.norm(inverse, 1)
        _check_condition(
            float(cond), "fixed-scatterer system is singular", frequency=float(f), frequency_index=j
        )

        x0 = inverse @ a_f
        x1 = inverse @ g_fr
        h0[j] = direct + b_f @ (d_f * x0)
        u[j] = a_r + g_fr.T @ (d_f * x0)
        q[j] = g_rr + g_fr.T @ (d_f[:, None] * x1)
        v[j] = b_r + x1.T @ (d_f * b_f)

    logger.debug(
        f"커널 계산 완료: 고정 산란체 {n_fixed}, RIS {n_ris}, 주파수 {count}"
    )
    return ChannelKernel(
        grid=grid,
        n_elements=n_ris,
        h0=h0,
        u=u,
        q=q,
        v=v,
        alpha_off=alpha_off,
        alpha_on=alpha_on,
    )


def channel(scene: Scene, mask: Mask, f: float, amplitude: float = 1.0) -> complex:
    """
    단일 주파수 채널 H(f)

    Args:
        scene: 장면
        mask: RIS 마스크
        f: 주파수 [Hz]
        amplitude: 입사장 진폭 배율

    Returns:
        complex: tx → rx 전달 함수
    """
    if f <= 0:
        raise DomainError(f"frequency must be positive, got {f}")
    if mask.n != scene.n_elements:
        raise DomainError(
            f"mask has {mask.n} elements but the scene has {scene.n_elements} RIS elements"
        )
    kernel = compute_kernel(scene, FrequencyGrid(f, f, 1))
    return complex(kernel.evaluate(mask, amplitude)[0])


def sweep(
    scene: Scene,
    mask: Mask,
    grid: FrequencyGrid,
    kernel: Optional[ChannelKernel] = None,
) -> ChannelSweep:
    """
    그리드 전체에 대한 채널 스윕

    kernel을 넘기면 재계산하지 않습니다 (같은 장면/그리드로 만든 커널이어야 함).
    """
    if mask.n != scene.n_elements:
        raise DomainError(
            f"mask has {mask.n} elements but the scene has {scene.n_elements} RIS elements"
        )
    if kernel is None:
        kernel = compute_kernel(scene, grid)
    elif kernel.grid != grid:
        raise DomainError("kernel was computed for a different grid")
    return ChannelSweep(grid, kernel.evaluate(mask))
