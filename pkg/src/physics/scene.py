# -*- coding: utf-8 -*-
"""
섀시 캐비티 장면(Scene) 구성 모듈

직사각형 벽 둘레의 고정 쌍극자, 한쪽 벽의 RIS 소자, 송수신 안테나로
이루어진 2D 장면을 설정(SceneConfig)으로부터 결정론적으로 생성합니다.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.spatial.distance import pdist

from src.core.exceptions import GeometryError
from src.physics.dipole import DipoleKind, DipoleSpec
from src.physics.greens import EPS_GEOM

logger = logging.getLogger(__name__)

WallName = Literal["bottom", "top", "left", "right"]


class SceneConfig(BaseModel):
    """장면 설정 (실험 설정 파일의 `scene` 섹션)"""

    model_config = ConfigDict(extra="forbid")

    # 캐비티 [m]
    width: float = Field(0.45, gt=0)
    height: float = Field(0.45, gt=0)

    # 벽 쌍극자: 6 GHz 반파장 간격, 비공진 고결합
    wall_spacing: float = Field(0.025, gt=0)
    wall_resonance: float = Field(9.0e9, gt=0)
    wall_linewidth: float = Field(10.0e9, gt=0)
    wall_coupling: float = Field(0.9, ge=0)
    position_jitter: float = Field(0.001, ge=0)
    clutter_count: int = Field(0, ge=0)

    # RIS
    ris_elements: int = Field(16, ge=0, le=32)
    ris_spacing: float = Field(0.024, gt=0)
    ris_rows: int = Field(1, ge=1)
    ris_wall: WallName = "bottom"
    ris_offset: float = Field(0.006, gt=0)
    ris_center: Optional[float] = None
    ris_resonance_off: float = Field(6.0e9, gt=0)
    ris_resonance_on: float = Field(5.5e9, gt=0)
    ris_linewidth: float = Field(0.15e9, gt=0)
    ris_coupling: float = Field(0.05, ge=0)

    # 안테나
    tx: Tuple[float, float] = (0.11, 0.31)
    rx: Tuple[float, float] = (0.34, 0.17)
    antennas_scatter: bool = False
    antenna_resonance: float = Field(6.0e9, gt=0)
    antenna_linewidth: float = Field(4.0e9, gt=0)
    antenna_coupling: float = Field(0.5, ge=0)

    seed: int = 0

    @model_validator(mode="after")
    def _check_resonances(self) -> "SceneConfig":
        if self.ris_resonance_on > self.ris_resonance_off:
            raise ValueError("ris_resonance_on must not exceed ris_resonance_off")
        return self


@dataclass(frozen=True)
class Scene:
    """
    불변 장면 기술

    Args:
        dipoles: 쌍극자 명세 목록
        tx: 송신 안테나 쌍극자 인덱스
        rx: 수신 안테나 쌍극자 인덱스
        ris_order: 마스크 소자 i → 쌍극자 인덱스
    """

    dipoles: Tuple[DipoleSpec, ...]
    tx: int
    rx: int
    ris_order: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dipoles", tuple(self.dipoles))
        object.__setattr__(self, "ris_order", tuple(int(i) for i in self.ris_order))
        count = len(self.dipoles)

        for name, index in (("tx", self.tx), ("rx", self.rx)):
            if not 0 <= index < count:
                raise GeometryError(f"{name} index {index} out of range")
            if self.dipoles[index].kind is not DipoleKind.ANTENNA:
                raise GeometryError(f"{name} must reference an antenna dipole")
        if self.tx == self.rx:
            raise GeometryError("tx and rx must be different dipoles")

        if len(set(self.ris_order)) != len(self.ris_order):
            raise GeometryError("ris_order contains duplicate dipoles")
        for index in self.ris_order:
            if not 0 <= index < count or self.dipoles[index].kind is not DipoleKind.RIS:
                raise GeometryError(f"ris_order entry {index} is not a ris dipole")

        if count >= 2:
            separation = float(pdist(self.positions).min())
            if separation < EPS_GEOM:
                raise GeometryError(
                    f"dipoles closer than {EPS_GEOM} m (min separation {separation:.3g} m)"
                )

    @property
    def positions(self) -> np.ndarray:
        return np.array([d.position for d in self.dipoles], dtype=float)

    @property
    def n_elements(self) -> int:
        return len(self.ris_order)

    def scatterer_indices(self) -> List[int]:
        """
        산란체로 취급하는 쌍극자 인덱스

        벽/클러터/RIS는 항상 포함되고, 안테나는 결합 세기가 0보다 클 때만 포함됩니다.
        """
        return [
            i
            for i, d in enumerate(self.dipoles)
            if d.kind is not DipoleKind.ANTENNA or d.coupling_strength > 0
        ]

    def fixed_indices(self) -> List[int]:
        """마스크와 무관한 산란체 인덱스"""
        ris = set(self.ris_order)
        return [i for i in self.scatterer_indices() if i not in ris]

    def swap_ports(self) -> "Scene":
        """송수신 안테나를 맞바꾼 장면 (상반성 검증용)"""
        return Scene(self.dipoles, self.rx, self.tx, self.ris_order)


def _perimeter_points(width: float, height: float, count: int) -> np.ndarray:
    """(0,0)에서 시작해 반시계 방향으로 둘레를 count등분한 점"""
    perimeter = 2.0 * (width + height)
    arc = np.arange(count) * (perimeter / count)
    points = np.empty((count, 2))
    for j, s in enumerate(arc):
        if s < width:
            points[j] = (s, 0.0)
        elif s < width + height:
            points[j] = (width, s - width)
        elif s < 2.0 * width + height:
            points[j] = (width - (s - width - height), height)
        else:
            points[j] = (0.0, height - (s - 2.0 * width - height))
    return points


def _ris_points(config: SceneConfig) -> np.ndarray:
    n = config.ris_elements
    if n == 0:
        return np.empty((0, 2))

    per_row = math.ceil(n / config.ris_rows)
    along_length = config.width if config.ris_wall in ("bottom", "top") else config.height
    center = along_length / 2.0 if config.ris_center is None else config.ris_center

    points = np.empty((n, 2))
    for i in range(n):
        row, col = divmod(i, per_row)
        along = center + (col - (per_row - 1) / 2.0) * config.ris_spacing
        depth = config.ris_offset + row * config.ris_spacing
        if config.ris_wall == "bottom":
            points[i] = (along, depth)
        elif config.ris_wall == "top":
            points[i] = (along, config.height - depth)
        elif config.ris_wall == "left":
            points[i] = (depth, along)
        else:
            points[i] = (config.width - depth, along)

    inside = (
        (points[:, 0] > 0)
        & (points[:, 0] < config.width)
        & (points[:, 1] > 0)
        & (points[:, 1] < config.height)
    )
    if not np.all(inside):
        raise GeometryError(
            f"RIS of {n} elements at spacing {config.ris_spacing} m does not fit on the {config.ris_wall} wall"
        )
    return points


def build_scene(config: SceneConfig) -> Scene:
    """
    설정으로부터 장면 생성

    배치 순서: 벽 쌍극자 → 클러터 → RIS 소자 → tx → rx
    동일한 설정과 시드는 항상 동일한 장면을 만듭니다.

    Args:
        config: 장면 설정

    Returns:
        Scene: 생성된 장면
    """
    for name, (x, y) in (("tx", config.tx), ("rx", config.rx)):
        if not (0 < x < config.width and 0 < y < config.height):
            raise GeometryError(
                f"{name} antenna at ({x}, {y}) lies outside the {config.width} x {config.height} m cavity"
            )

    rng = np.random.default_rng(config.seed)
    perimeter = 2.0 * (config.width + config.height)
    n_wall = max(int(round(perimeter / config.wall_spacing)), 0)

    wall_points = _perimeter_points(config.width, config.height, n_wall)
    if config.position_jitter > 0 and n_wall:
        wall_points = wall_points + rng.normal(0.0, config.position_jitter, size=wall_points.shape)

    clutter_points = np.column_stack(
        [
            rng.uniform(0.0, config.width, size=config.clutter_count),
            rng.uniform(0.0, config.height, size=config.clutter_count),
        ]
    )

    dipoles: List[DipoleSpec] = []
    for point in np.vstack([wall_points.reshape(-1, 2), clutter_points]):
        dipoles.append(
            DipoleSpec(
                position=tuple(point),
                kind=DipoleKind.WALL,
                resonance_off=config.wall_resonance,
                resonance_on=config.wall_resonance,
                linewidth=config.wall_linewidth,
                coupling_strength=config.wall_coupling,
            )
        )

    ris_order = []
    for point in _ris_points(config):
        ris_order.append(len(dipoles))
        dipoles.append(
            DipoleSpec(
                position=tuple(point),
                kind=DipoleKind.RIS,
                resonance_off=config.ris_resonance_off,
                resonance_on=config.ris_resonance_on,
                linewidth=config.ris_linewidth,
                coupling_strength=config.ris_coupling,
            )
        )

    antenna_coupling = config.antenna_coupling if config.antennas_scatter else 0.0
    for point in (config.tx, config.rx):
        dipoles.append(
            DipoleSpec(
                position=tuple(point),
                kind=DipoleKind.ANTENNA,
                resonance_off=config.antenna_resonance,
                resonance_on=config.antenna_resonance,
                linewidth=config.antenna_linewidth,
                coupling_strength=antenna_coupling,
            )
        )

    scene = Scene(
        dipoles=tuple(dipoles),
        tx=len(dipoles) - 2,
        rx=len(dipoles) - 1,
        ris_order=tuple(ris_order),
    )
    logger.info(
        f"✅ 장면 생성: 벽 {n_wall}, 클러터 {config.clutter_count}, RIS {len(ris_order)}, 안테나 2"
    )
    return scene


def scene_from_points(
    scatterers: Sequence[DipoleSpec],
    tx: Sequence[float],
    rx: Sequence[float],
    antenna_coupling: float = 0.0,
) -> Scene:
    """
    임의의 산란체 목록과 안테나 위치로 장면 생성

    RIS 소자는 목록에 나타난 순서대로 마스크 소자 0, 1, ... 에 대응합니다.
    """
    dipoles = list(scatterers)
    ris_order = [i for i, d in enumerate(dipoles) if d.kind is DipoleKind.RIS]
    for point in (tx, rx):
        dipoles.append(
            DipoleSpec(
                position=tuple(point),
                kind=DipoleKind.ANTENNA,
                resonance_off=6.0e9,
                resonance_on=6.0e9,
                linewidth=4.0e9,
                coupling_strength=antenna_coupling,
            )
        )
    return Scene(tuple(dipoles), len(dipoles) - 2, len(dipoles) - 1, tuple(ris_order))
