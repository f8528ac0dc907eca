#!/usr/bin/env python3
"""
VNA 측정 캠페인(.s2p) 가져오기 스크립트

`mask_<index>.s2p` 파일이 들어 있는 디렉토리에 manifest.json을 만들고
모든 파일을 한 번 로드해 그리드 일관성을 검증합니다.
이후 실험 설정에서 io.archive 로 이 디렉토리(또는 manifest.json)를 지정하면 됩니다.
"""

import argparse
import logging
import sys
from pathlib import Path

# 프로젝트 루트를 Python 경로에 추가
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.exceptions import RisToolkitError  # noqa: E402
from src.data_collection.sweep_archive import (  # noqa: E402
    index_touchstone_directory,
    load_sweep_archive,
)

# 로깅 설정
logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)


def parse_args():
    parser = argparse.ArgumentParser(description="Touchstone 측정 캠페인을 스윕 아카이브로 색인")
    parser.add_argument("directory", type=str, help="mask_<index>.s2p 파일 디렉토리")
    parser.add_argument("--elements", "-n", type=int, default=16, help="RIS 소자 수")
    parser.add_argument("--points", type=int, default=None, help="VNA 점 수 (메타데이터)")
    parser.add_argument("--if-bandwidth", type=float, default=None, help="IF 대역폭 [Hz] (메타데이터)")
    parser.add_argument("--power-dbm", type=float, default=None, help="출력 [dBm] (메타데이터)")
    parser.add_argument("--threads", type=int, default=4, help="검증 로드 스레드 수")
    return parser.parse_args()


def main():
    """메인 실행 함수"""
    args = parse_args()
    logger.info("🚀 Touchstone 캠페인 색인 시작")

    metadata = {
        key: value
        for key, value in (
            ("vna_points", args.points),
            ("if_bandwidth_hz", args.if_bandwidth),
            ("power_dbm", args.power_dbm),
        )
        if value is not None
    }

    try:
        manifest_path = index_touchstone_directory(args.directory, args.elements, metadata)
        dataset = load_sweep_archive(manifest_path, threads=args.threads)
    except RisToolkitError as e:
        logger.error(f"❌ 색인 실패: {e}")
        return e.exit_code

    logger.info(f"✅ 완료: {manifest_path} ({len(dataset)}개 마스크, {dataset.grid})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
