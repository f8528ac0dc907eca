"""
실험 설정 관리 유틸리티

YAML(또는 JSON) 실험 설정 파일을 로드하고 `--set a.b=value` 오버라이드를 적용한 뒤
pydantic 모델로 검증하는 클래스
"""

import copy
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.core.exceptions import ConfigError
from src.core.frequency_grid import GridConfig
from src.optimization.strategy_manager import StrategyConfig
from src.physics.scene import SceneConfig
from src.signal_processing.fom import FomConfig

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config/experiment.yaml"


class SimulateConfig(BaseModel):
    """simulate 명령의 마스크 선택"""

    model_config = ConfigDict(extra="forbid")

    mode: Literal["first", "list", "random"] = "first"
    count: int = Field(100, ge=1)
    indices: List[int] = Field(default_factory=list)
    seed: int = 0

    @model_validator(mode="after")
    def _check_indices(self) -> "SimulateConfig":
        if self.mode == "list" and not self.indices:
            raise ValueError("simulate.mode 'list' needs simulate.indices")
        if len(set(self.indices)) != len(self.indices):
            raise ValueError("simulate.indices contains duplicates")
        return self


class CharacterizationConfig(BaseModel):
    """characterize 명령 설정 (넓은 대역에서 마스크 변동 측정)"""

    model_config = ConfigDict(extra="forbid")

    grid: GridConfig = Field(
        default_factory=lambda: GridConfig(f_start=2.5e9, f_stop=7.0e9, count=181)
    )
    masks: int = Field(200, ge=1)
    seed: int = 0
    band_fraction: float = Field(0.5, gt=0, le=1)
    magnitude_scale: Literal["linear", "db"] = "linear"
    ddof: int = Field(0, ge=0, le=1)


class IOConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    archive: Optional[str] = None
    output_dir: str = "results"


class LoggingConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    level: str = "WARNING"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file_prefix: str = "ris_experiment"
    log_dir: Optional[str] = "logs"


class ExperimentConfig(BaseModel):
    """
    실험 설정

    채널 소스는 scene(시뮬레이션)과 io.archive(측정) 중 정확히 하나여야 합니다.
    """

    model_config = ConfigDict(extra="forbid")

    scene: Optional[SceneConfig] = None
    grid: GridConfig = Field(default_factory=GridConfig)
    fom: FomConfig = Field(default_factory=FomConfig)
    strategy: StrategyConfig = Field(default_factory=StrategyConfig)
    simulate: SimulateConfig = Field(default_factory=SimulateConfig)
    characterization: CharacterizationConfig = Field(default_factory=CharacterizationConfig)
    io: IOConfig = Field(default_factory=IOConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)
    threads: int = Field(0, ge=0)

    @model_validator(mode="after")
    def _check_source(self) -> "ExperimentConfig":
        has_scene = self.scene is not None
        has_archive = self.io.archive is not None
        if has_scene == has_archive:
            raise ValueError("configure exactly one channel source: 'scene' or 'io.archive'")
        if has_archive and not Path(self.io.archive).exists():
            raise ValueError(f"archive path does not exist: {self.io.archive}")
        return self

    @property
    def simulated(self) -> bool:
        return self.scene is not None


def _parse_override(item: str) -> Dict[str, Any]:
    if "=" not in item:
        raise ConfigError(f"--set expects key=value, got {item!r}")
    key, raw = item.split("=", 1)
    key = key.strip()
    if not key or any(not part for part in key.split(".")):
        raise ConfigError(f"--set has an invalid key {key!r}")
    try:
        value = yaml.safe_load(raw) if raw.strip() else None
    except yaml.YAMLError as e:
        raise ConfigError(f"--set {key}: cannot parse value {raw!r}: {e}") from e
    return {"key": key, "value": value}


def apply_overrides(data: Dict[str, Any], overrides: Sequence[str]) -> Dict[str, Any]:
    """
    점 표기 키 오버라이드 적용

    Args:
        data: 원본 설정 딕셔너리 (변경되지 않음)
        overrides: "a.b.c=value" 목록, 값은 YAML로 해석

    Returns:
        Dict[str, Any]: 오버라이드가 적용된 새 딕셔너리
    """
    result = copy.deepcopy(data)
    for item in overrides:
        parsed = _parse_override(item)
        parts = parsed["key"].split(".")
        node = result
        for part in parts[:-1]:
            child = node.get(part)
            if not isinstance(child, dict):
                child = {}
                node[part] = child
            node = child
        node[parts[-1]] = parsed["value"]
        logger.info(f"설정 오버라이드: {parsed['key']} = {parsed['value']!r}")
    return result


class ExperimentConfigManager:
    """실험 설정 관리 클래스"""

    def __init__(
        self,
        config_path: Optional[Union[str, Path]] = DEFAULT_CONFIG_PATH,
        overrides: Sequence[str] = (),
    ):
        """
        실험 설정 관리자 초기화

        Args:
            config_path: 설정 파일 경로 (None이면 빈 설정에서 시작)
            overrides: `--set` 오버라이드 목록
        """
        self.config_path = Path(config_path) if config_path else None
        self.overrides = list(overrides)
        self.raw = apply_overrides(self._load_config(), self.overrides)
        self.config = self._validate(self.raw)

    def _load_config(self) -> Dict[str, Any]:
        """설정 파일 로드"""
        if self.config_path is None:
            return {}
        try:
            with open(self.config_path, "r", encoding="utf-8") as file:
                data = yaml.safe_load(file)
        except FileNotFoundError as e:
            raise ConfigError(f"config file not found: {self.config_path}") from e
        except yaml.YAMLError as e:
            raise ConfigError(f"config parse error in {self.config_path}: {e}") from e
        except OSError as e:
            raise ConfigError(f"cannot read config {self.config_path}: {e}") from e

        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError(f"config {self.config_path} must be a mapping at the top level")
        logger.info(f"실험 설정 로드 완료: {self.config_path}")
        return data

    def _validate(self, data: Dict[str, Any]) -> ExperimentConfig:
        try:
            return ExperimentConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"invalid experiment config: {e}") from e

    def config_hash(self) -> str:
        """정규화된 설정의 SHA256"""
        canonical = json.dumps(self.config.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def get_logging_config(self) -> LoggingConfig:
        """로깅 설정 조회"""
        return self.config.logging
