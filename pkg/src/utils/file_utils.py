# -*- coding: utf-8 -*-
"""
원자적 파일 쓰기 유틸리티

임시 파일에 쓴 뒤 os.replace로 교체해 중간 상태의 파일이 남지 않게 합니다.
"""

import contextlib
import logging
import os
import shutil
import tempfile
from pathlib import Path
from typing import Iterator, Union

import pandas as pd

from src.core.exceptions import ArchiveError, OutputExistsError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

# 왕복 시 비트 단위로 동일한 double 표기
CSV_FLOAT_FORMAT = "%.17g"


def atomic_write_text(path: PathLike, text: str) -> Path:
    """
    텍스트 파일을 원자적으로 기록

    Raises:
        ArchiveError: 쓰기 실패 시 (경로 포함)
    """
    path = Path(path)
    tmp_name = None
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except OSError as e:
        if tmp_name and os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise ArchiveError(f"failed to write {path}: {e}") from e
    return path


def write_csv_atomic(frame: pd.DataFrame, path: PathLike) -> Path:
    """DataFrame을 헤더 1줄, 왕복 정확 형식의 CSV로 원자적 기록"""
    text = frame.to_csv(index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
    return atomic_write_text(path, text)


@contextlib.contextmanager
def atomic_output_directory(target: PathLike, force: bool = False) -> Iterator[Path]:
    """
    형제 임시 디렉토리에 산출물을 만든 뒤 성공 시 target으로 교체

    예외가 발생하면 임시 디렉토리를 지우고 target은 건드리지 않습니다.

    Args:
        target: 최종 출력 디렉토리
        force: True면 기존 디렉토리를 교체

    Raises:
        OutputExistsError: target이 이미 있고 force가 아닌 경우
    """
    target = Path(target)
    if target.exists() and not force:
        raise OutputExistsError(
            f"output directory {target} already exists; pass --force to overwrite"
        )
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        staging = Path(tempfile.mkdtemp(prefix=f".{target.name}.", dir=target.parent))
    except OSError as e:
        raise ArchiveError(f"cannot create output directory next to {target}: {e}") from e

    try:
        yield staging
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise

    try:
        if target.exists():
            shutil.rmtree(target)
        os.replace(staging, target)
    except OSError as e:
        shutil.rmtree(staging, ignore_errors=True)
        raise ArchiveError(f"failed to move results into {target}: {e}") from e
    logger.info(f"✅ 출력 저장 완료: {target}")
