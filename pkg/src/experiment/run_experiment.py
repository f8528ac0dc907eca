#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
RIS 채널 실험 실행 스크립트

하위 명령:
    simulate      물리 모델로 마스크별 스윕을 생성해 아카이브로 저장
    characterize  마스크별 응답 표준편차로 운용 대역 선택
    optimize      탐색 전략으로 FOM 최대 마스크 탐색
    report        optimize 결과 요약

종료 코드: 0 정상, 1 I/O, 2 설정, 3 수치 오류, 4 전수 탐색 가드 거부
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

# 경로 설정
script_dir = os.path.dirname(os.path.abspath(__file__))
project_root = os.path.dirname(os.path.dirname(script_dir))  # 프로젝트 루트 디렉토리
if project_root not in sys.path:
    sys.path.append(project_root)

from src.core.exceptions import RisToolkitError  # noqa: E402
from src.experiment.workflows import (  # noqa: E402
    RunOptions,
    cmd_characterize,
    cmd_optimize,
    cmd_report,
    cmd_simulate,
)
from src.utils.config_manager import (  # noqa: E402
    DEFAULT_CONFIG_PATH,
    ExperimentConfigManager,
    LoggingConfig,
)
from src.utils.logging_config import setup_logging  # noqa: E402

logger = logging.getLogger(__name__)

COMMANDS = ("simulate", "characterize", "optimize", "report")


def build_parser() -> argparse.ArgumentParser:
    """명령행 파서 생성"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        "-c",
        type=str,
        help="실험 설정 파일 경로 (YAML 또는 JSON)",
        default=DEFAULT_CONFIG_PATH,
    )
    common.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="설정 오버라이드 (예: --set scene.ris_elements=8, 여러 번 지정 가능)",
    )
    common.add_argument("--out", "-o", type=str, help="출력 디렉토리", default=None)
    common.add_argument("--force", action="store_true", help="기존 출력 디렉토리 덮어쓰기")
    common.add_argument("--svg", action="store_true", help="SVG 플롯 생성")
    common.add_argument(
        "--threads", "-t", type=int, default=None, help="병렬 스레드 수 (0 = 자동)"
    )
    common.add_argument(
        "--log-level", type=str, default=None, help="로그 레벨 (기본: 설정 파일의 logging.level)"
    )

    parser = argparse.ArgumentParser(description="RIS 섀시 캐비티 CIR 성형 실험 도구")
    subparsers = parser.add_subparsers(dest="command", required=True)

    subparsers.add_parser("simulate", parents=[common], help="마스크별 스윕 시뮬레이션")
    characterize = subparsers.add_parser(
        "characterize", parents=[common], help="마스크 민감 대역 특성화"
    )
    characterize.add_argument("--masks", type=int, default=None, help="사용할 마스크 수")
    subparsers.add_parser("optimize", parents=[common], help="FOM 최대 마스크 탐색")
    report = subparsers.add_parser("report", parents=[common], help="optimize 결과 요약")
    report.add_argument("input_dir", type=str, help="optimize 출력 디렉토리")
    return parser


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """명령행 인수 파싱"""
    return build_parser().parse_args(argv)


def report_error(error: RisToolkitError) -> int:
    """오류를 stderr에 JSON 한 줄로 출력하고 종료 코드 반환"""
    payload = {
        "error": type(error).__name__,
        "exit_code": error.exit_code,
        "message": str(error),
    }
    missing = getattr(error, "missing", None)
    if missing:
        payload["missing"] = missing
    print(json.dumps(payload, ensure_ascii=False), file=sys.stderr)
    return error.exit_code


def run(args: argparse.Namespace) -> int:
    if args.command == "report":
        setup_logging(LoggingConfig(log_dir=None), args.log_level)
        cmd_report(Path(args.input_dir))
        return 0

    manager = ExperimentConfigManager(args.config, args.overrides)
    config = manager.config
    setup_logging(manager.get_logging_config(), args.log_level)
    logger.info(f"🚀 {args.command} 시작 (config {manager.config_hash()[:12]})")

    options = RunOptions(
        out_dir=Path(args.out) if args.out else None,
        force=args.force,
        svg=args.svg,
        threads=config.threads if args.threads is None else args.threads,
        masks=getattr(args, "masks", None),
        config_hash=manager.config_hash(),
    )
    if args.command == "simulate":
        cmd_simulate(config, options)
    elif args.command == "characterize":
        cmd_characterize(config, options)
    else:
        cmd_optimize(config, options)
    logger.info(f"✅ {args.command} 완료")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """메인 함수"""
    args = parse_args(argv)
    try:
        return run(args)
    except RisToolkitError as e:
        logger.error(f"❌ {args.command} 실패: {e}")
        return report_error(e)
    except Exception as e:
        logger.error(f"❌ {args.command} 중 예기치 못한 오류: {e}", exc_info=True)
        print(
            json.dumps({"error": type(e).__name__, "exit_code": 1, "message": str(e)}),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
