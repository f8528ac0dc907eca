# -*- coding: utf-8 -*-
"""
Touchstone v1 2-포트(.s2p) 파서

옵션 줄 `# HZ|KHZ|MHZ|GHZ S RI|MA|DB R <x>` 와 `!` 주석을 지원하며
S21만 선형 복소값으로 반환합니다. 열 순서는 f S11 S21 S12 S22 입니다.
"""

import logging
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from src.core.exceptions import DomainError, ParseError
from src.core.frequency_grid import FrequencyGrid
from src.core.sweep import ChannelSweep

logger = logging.getLogger(__name__)

FREQUENCY_UNITS = {"HZ": 1.0, "KHZ": 1e3, "MHZ": 1e6, "GHZ": 1e9}
DATA_FORMATS = ("RI", "MA", "DB")
TWO_PORT_COLUMNS = 9

# 균일 축 판정 허용 오차 (Δf 대비)
UNIFORM_TOLERANCE = 1e-3


class TouchstoneOptions:
    """옵션 줄 내용 (기본값: GHZ S MA R 50)"""

    def __init__(self, unit: str = "GHZ", data_format: str = "MA", reference: float = 50.0):
        self.unit = unit
        self.data_format = data_format
        self.reference = reference

    @property
    def multiplier(self) -> float:
        return FREQUENCY_UNITS[self.unit]


def _parse_option_line(body: str, line_number: int) -> TouchstoneOptions:
    options = TouchstoneOptions()
    tokens = body.upper().split()
    position = 0
    while position < len(tokens):
        token = tokens[position]
        if token in FREQUENCY_UNITS:
            options.unit = token
        elif token in DATA_FORMATS:
            options.data_format = token
        elif token == "S":
            pass
        elif token in ("Y", "Z", "H", "G"):
            raise ParseError(f"only S-parameters are supported, got {token}", line_number)
        elif token == "R":
            if position + 1 >= len(tokens):
                raise ParseError("option line 'R' needs a reference impedance", line_number)
            try:
                options.reference = float(tokens[position + 1])
            except ValueError:
                raise ParseError(
                    f"malformed reference impedance {tokens[position + 1]!r}", line_number
                )
            position += 1
        else:
            raise ParseError(f"malformed option line token {token!r}", line_number)
        position += 1
    return options


def _to_complex(first: float, second: float, data_format: str) -> complex:
    if data_format == "RI":
        return complex(first, second)
    magnitude = first if data_format == "MA" else 10.0 ** (first / 20.0)
    return complex(magnitude * np.exp(1j * np.deg2rad(second)))


def parse_touchstone_s2p(text: str) -> Tuple[FrequencyGrid, np.ndarray]:
    """
    .s2p 내용을 파싱

    Args:
        text: 파일 내용

    Returns:
        Tuple[FrequencyGrid, np.ndarray]: 주파수 그리드 [Hz], S21 (complex128)

    Raises:
        ParseError: 포트 수/열 수 오류, 옵션 줄 오류, 비단조 주파수 (줄 번호 포함)
    """
    options: Optional[TouchstoneOptions] = None
    freqs: List[float] = []
    s21: List[complex] = []
    last_line = 0

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue

        if line.startswith("#"):
            if freqs:
                raise ParseError("option line must precede the data", line_number)
            if options is not None:
                raise ParseError("duplicate option line", line_number)
            options = _parse_option_line(line[1:], line_number)
            continue

        if line.startswith("["):
            raise ParseError("Touchstone v2 keywords are not supported", line_number)

        tokens = line.split()
        if len(tokens) == 3:
            raise ParseError("unsupported port count: 1-port data found, expected 2-port", line_number)
        if len(tokens) != TWO_PORT_COLUMNS:
            raise ParseError(
                f"wrong column count: expected {TWO_PORT_COLUMNS}, got {len(tokens)}", line_number
            )
        try:
            values = [float(t) for t in tokens]
        except ValueError:
            raise ParseError(f"non-numeric value in row {line!r}", line_number)

        if options is None:
            options = TouchstoneOptions()
        frequency = values[0] * options.multiplier
        if freqs and not frequency > freqs[-1]:
            raise ParseError(
                f"frequencies must be strictly increasing ({frequency} Hz after {freqs[-1]} Hz)",
                line_number,
            )
        freqs.append(frequency)
        s21.append(_to_complex(values[3], values[4], options.data_format))
        last_line = line_number

    if not freqs:
        raise ParseError("no data rows found")

    axis = np.array(freqs)
    try:
        grid = FrequencyGrid(axis[0], axis[-1], len(axis))
    except DomainError as e:
        raise ParseError(f"invalid frequency axis: {e}", last_line) from e
    if grid.count > 1:
        deviation = np.max(np.abs(axis - grid.frequencies()))
        if deviation > UNIFORM_TOLERANCE * grid.step:
            raise ParseError(
                f"frequency axis is not uniform (deviation {deviation:.3g} Hz)", last_line
            )

    samples = np.array(s21, dtype=np.complex128)
    if not np.all(np.isfinite(samples)):
        raise ParseError("S21 contains non-finite values")
    return grid, samples


def load_touchstone_sweep(path: Union[str, Path]) -> ChannelSweep:
    """.s2p 파일을 ChannelSweep으로 로드"""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        grid, samples = parse_touchstone_s2p(text)
    except ParseError as e:
        raise ParseError(f"{path}: {e}") from e
    logger.debug(f"Touchstone 로드: {path} ({grid})")
    return ChannelSweep(grid, samples)
