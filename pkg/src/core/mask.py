# -*- coding: utf-8 -*-
"""
RIS 마스크 모듈

N개 소자의 이진 다이오드 상태 벡터와 정수 인덱스 변환을 제공합니다.
비트 순서: 소자 0 = 최하위 비트(LSB)
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.core.exceptions import DomainError

MAX_ELEMENTS = 32


@dataclass(frozen=True)
class Mask:
    """
    RIS 소자 상태 벡터 (불변)

    빈 마스크(N=0)는 RIS 소자가 없는 장면에서만 사용되는 퇴화 케이스입니다.
    """

    bits: Tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) > MAX_ELEMENTS:
            raise DomainError(
                f"mask has {len(bits)} elements; at most {MAX_ELEMENTS} are supported"
            )
        if any(b not in (0, 1) for b in bits):
            raise DomainError(f"mask bits must be 0 or 1, got {bits}")
        object.__setattr__(self, "bits", bits)

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def index(self) -> int:
        return mask_to_index(self)

    @classmethod
    def all_off(cls, n: int) -> "Mask":
        return mask_from_index(0, n)

    @classmethod
    def all_on(cls, n: int) -> "Mask":
        return mask_from_index((1 << n) - 1, n)

    def as_array(self) -> np.ndarray:
        """소자 상태를 bool 배열로 반환"""
        return np.array(self.bits, dtype=bool)

    def __str__(self) -> str:
        # 표기는 소자 N-1 ... 0 순서 (인덱스의 이진 표기와 동일)
        return "".join(str(b) for b in reversed(self.bits)) or "-"


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_ELEMENTS:
        raise DomainError(f"element count must be within 0..{MAX_ELEMENTS}, got {n}")


def mask_from_index(index: int, n: int) -> Mask:
    """
    정수 인덱스를 마스크로 변환

    Args:
        index: 부호 없는 정수 인덱스 (0 <= index < 2^n)
        n: 소자 수

    Returns:
        Mask: 비트 i가 소자 i의 상태인 마스크
    """
    _check_n(n)
    index = int(index)
    if not 0 <= index < (1 << n):
        raise DomainError(f"mask index {index} out of range [0, 2^{n}) = [0, {1 << n})")
    return Mask(tuple((index >> i) & 1 for i in range(n)))


def mask_to_index(mask: Mask) -> int:
    """마스크를 정수 인덱스로 변환 (mask_from_index의 역함수)"""
    index = 0
    for i, bit in enumerate(mask.bits):
        index |= bit << i
    return index


def flip_element(mask: Mask, i: int) -> Mask:
    """
    소자 i의 상태만 반전한 새 마스크를 반환

    Args:
        mask: 원본 마스크 (변경되지 않음)
        i: 소자 번호

    Returns:
        Mask: 위치 i만 다른 마스크
    """
    if not 0 <= i < mask.n:
        raise DomainError(f"element {i} out of range for a {mask.n}-element mask")
    bits = list(mask.bits)
    bits[i] ^= 1
    return Mask(tuple(bits))
