# -*- coding: utf-8 -*-
"""
예외 계층 모듈

툴킷 전체에서 사용하는 예외 클래스와 CLI 종료 코드를 정의합니다.
종료 코드: 0 정상, 1 I/O, 2 설정, 3 수치 오류, 4 가드 거부
"""

from typing import List, Optional


class RisToolkitError(Exception):
    """툴킷 예외의 기본 클래스"""

    exit_code = 1


class DomainError(RisToolkitError, ValueError):
    """도메인 값의 사전 조건 위반 (마스크 인덱스 범위, f <= 0 등)"""

    exit_code = 2


class ConfigError(RisToolkitError):
    """설정 검증 실패"""

    exit_code = 2


class GeometryError(ConfigError):
    """장면(Scene) 구성 실패: 안테나 위치, 쌍극자 간격 등"""


class MaskUnavailableError(RisToolkitError):
    """측정 공급자에 기록되지 않은 마스크를 요청한 경우"""

    exit_code = 2


class NumericalError(RisToolkitError):
    """
    수치 계산 실패

    Args:
        message: 오류 메시지
        frequency: 실패한 주파수 [Hz]
        frequency_index: 그리드 상의 인덱스
        mask_index: 평가 중이던 마스크 인덱스
    """

    exit_code = 3

    def __init__(
        self,
        message: str,
        frequency: Optional[float] = None,
        frequency_index: Optional[int] = None,
        mask_index: Optional[int] = None,
    ):
        self.detail = message
        self.frequency = frequency
        self.frequency_index = frequency_index
        self.mask_index = mask_index

        details = []
        if frequency is not None:
            details.append(f"f={frequency:.6g} Hz")
        if frequency_index is not None:
            details.append(f"grid index {frequency_index}")
        if mask_index is not None:
            details.append(f"mask {mask_index}")
        if details:
            message = f"{message} ({', '.join(details)})"
        super().__init__(message)


class ZeroEnergyError(NumericalError):
    """CIR 에너지가 0인 경우"""


class SingularityError(NumericalError):
    """일치하는 위치 또는 특이 행렬"""


class NoSensitiveBandError(NumericalError):
    """마스크에 민감한 대역이 없는 경우"""


class GuardRefusalError(RisToolkitError):
    """전수 탐색 가드(N > 24) 발동"""

    exit_code = 4


class ParseError(RisToolkitError):
    """Touchstone 등 입력 파일 파싱 오류 (1부터 시작하는 줄 번호 포함)"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ArchiveError(RisToolkitError):
    """스윕 아카이브 읽기/쓰기 실패"""


class OutputExistsError(RisToolkitError):
    """출력 디렉토리가 이미 존재 (--force 없이 재실행)"""


class ReportError(RisToolkitError):
    """리포트 생성에 필요한 산출물 누락"""

    def __init__(self, message: str, missing: Optional[List[str]] = None):
        self.missing = list(missing or [])
        super().__init__(message)
