# -*- coding: utf-8 -*-
"""
로깅 설정 유틸리티

logs/<prefix>_<YYYYMMDD>.log 파일 핸들러와 stderr 스트림 핸들러를 설치합니다.
기본 레벨은 WARNING이며 stdout은 결과 요약 전용으로 남겨 둡니다.
"""

import logging
import os
from datetime import datetime
from typing import Optional

from src.utils.config_manager import LoggingConfig


def setup_logging(config: LoggingConfig, level: Optional[str] = None) -> Optional[str]:
    """
    루트 로거 설정

    Args:
        config: 로깅 설정
        level: 명령행에서 지정한 레벨 (설정보다 우선)

    Returns:
        Optional[str]: 로그 파일 경로 (파일 로깅을 끈 경우 None)
    """
    level_name = (level or config.level).upper()
    numeric_level = logging.getLevelName(level_name)
    if not isinstance(numeric_level, int):
        numeric_level = logging.WARNING

    handlers = [logging.StreamHandler()]
    log_file = None
    if config.log_dir:
        current_date = datetime.now().strftime("%Y%m%d")
        log_file = os.path.join(config.log_dir, f"{config.file_prefix}_{current_date}.log")
        try:
            os.makedirs(config.log_dir, exist_ok=True)
            handlers.insert(0, logging.FileHandler(log_file, encoding="utf-8"))
        except OSError:
            log_file = None

    logging.basicConfig(
        level=numeric_level,
        format=config.format,
        handlers=handlers,
        force=True,
    )
    return log_file
