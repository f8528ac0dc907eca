"""
실행 메타데이터 관리 모듈

출력 디렉토리마다 run_metadata.json을 기록합니다.
설정 해시, 그리드/t_step, 전략, 소요 시간, 산출물별 SHA256을 담아 재현성을 확인할 수 있게 합니다.
"""

import hashlib
import json
import logging
import platform
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

from src.utils.file_utils import atomic_write_text

logger = logging.getLogger(__name__)

RUN_METADATA_NAME = "run_metadata.json"


class RunMetadataManager:
    """
    실행 메타데이터 관리 클래스

    - 실행 시작/종료 시각 추적
    - 산출물 무결성 해시
    - 실행 파라미터 기록
    """

    def __init__(self, command: str, config_hash: str):
        """
        Args:
            command: 실행한 하위 명령 (simulate, optimize, ...)
            config_hash: 설정 SHA256
        """
        self.command = command
        self.config_hash = config_hash
        self.started_at = datetime.now()
        self.fields: Dict[str, Any] = {}

    def update(self, **fields: Any) -> None:
        self.fields.update(fields)

    @staticmethod
    def calculate_file_hash(file_path: Path) -> str:
        """
        파일의 SHA256 해시 계산

        Args:
            file_path (Path): 파일 경로

        Returns:
            str: SHA256 해시값 (파일이 없으면 빈 문자열)
        """
        if not file_path.exists():
            return ""

        hash_sha256 = hashlib.sha256()
        with open(file_path, "rb") as f:
            for chunk in iter(lambda: f.read(4096), b""):
                hash_sha256.update(chunk)
        return hash_sha256.hexdigest()

    def build(self, directory: Path) -> Dict[str, Any]:
        """디렉토리의 산출물 해시를 포함한 메타데이터 딕셔너리"""
        finished_at = datetime.now()
        artifacts = {
            path.name: self.calculate_file_hash(path)
            for path in sorted(Path(directory).iterdir())
            if path.is_file() and path.name != RUN_METADATA_NAME
        }
        return {
            "command": self.command,
            "config_hash": self.config_hash,
            "started_at": self.started_at.isoformat(timespec="seconds"),
            "finished_at": finished_at.isoformat(timespec="seconds"),
            "elapsed_s": round((finished_at - self.started_at).total_seconds(), 3),
            "python": platform.python_version(),
            **self.fields,
            "artifacts": artifacts,
        }

    def save(self, directory: Path) -> Path:
        """run_metadata.json 기록"""
        metadata = self.build(directory)
        path = atomic_write_text(
            Path(directory) / RUN_METADATA_NAME,
            json.dumps(metadata, indent=2, ensure_ascii=False) + "\n",
        )
        logger.info(f"메타데이터 저장: {path}")
        return path


def load_run_metadata(directory: Path) -> Optional[Dict[str, Any]]:
    """run_metadata.json 읽기 (없거나 손상되면 None)"""
    path = Path(directory) / RUN_METADATA_NAME
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return None
