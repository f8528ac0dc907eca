# -*- coding: utf-8 -*-
"""공통 픽스처"""

import os
import sys
from typing import Callable, Dict, Optional

import numpy as np
import pytest

project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from src.core.exceptions import MaskUnavailableError  # noqa: E402
from src.core.frequency_grid import FrequencyGrid  # noqa: E402
from src.core.mask import Mask  # noqa: E402
from src.core.sweep import ChannelSweep  # noqa: E402
from src.optimization.channel_provider import ChannelProvider  # noqa: E402
from src.physics.scene import SceneConfig, build_scene  # noqa: E402


class TabulatedProvider(ChannelProvider):
    """
    테스트용 공급자: 마스크 인덱스 → 스펙트럼 함수

    recorded를 주면 그 인덱스만 사용 가능 (측정 공급자 흉내)
    """

    def __init__(
        self,
        grid: FrequencyGrid,
        n_elements: int,
        spectrum: Callable[[int, np.ndarray], np.ndarray],
        recorded: Optional[list] = None,
    ):
        super().__init__("tabulated", grid, n_elements)
        self.spectrum = spectrum
        self.recorded = None if recorded is None else sorted(recorded)
        self.calls: Dict[int, int] = {}

    def available_indices(self):
        return None if self.recorded is None else list(self.recorded)

    def _fetch_sweep(self, mask: Mask) -> ChannelSweep:
        if self.recorded is not None and mask.index not in self.recorded:
            raise MaskUnavailableError(f"mask {mask.index} not recorded")
        self.calls[mask.index] = self.calls.get(mask.index, 0) + 1
        return ChannelSweep(self.grid, self.spectrum(mask.index, self.grid.frequencies()))


@pytest.fixture
def band_grid() -> FrequencyGrid:
    return FrequencyGrid(5.7e9, 6.1e9, 101)


@pytest.fixture
def small_scene_config() -> SceneConfig:
    """0.2 m 캐비티, RIS 8소자"""
    return SceneConfig(
        width=0.2,
        height=0.2,
        ris_elements=8,
        tx=(0.05, 0.14),
        rx=(0.15, 0.08),
        seed=3,
    )


@pytest.fixture
def small_scene(small_scene_config):
    return build_scene(small_scene_config)
