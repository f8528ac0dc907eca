#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
탐색 전략 관리자 모듈

설정의 `strategy.name`으로 내장 전략을 고르거나,
`module.path.ClassName` 형식의 점 경로로 사용자 전략 클래스를 동적으로 로드합니다.
"""

import importlib
import logging
from abc import ABCMeta, abstractmethod
from typing import Any, Dict, Optional, Type

from pydantic import BaseModel, ConfigDict, Field

from src.core.exceptions import ConfigError
from src.core.mask import mask_from_index
from src.optimization.channel_provider import ChannelProvider
from src.optimization.evaluator import FomEvaluator
from src.optimization.search import (
    SearchResult,
    coordinate_descent,
    exhaustive_search,
    multi_start_coordinate_descent,
    random_search,
)
from src.signal_processing.fom import FomConfig

logger = logging.getLogger(__name__)


class StrategyConfig(BaseModel):
    """실험 설정의 `strategy` 섹션"""

    model_config = ConfigDict(extra="forbid")

    name: str = "exhaustive"
    max_sweeps: int = Field(10, ge=1)
    starts: int = Field(1, ge=1)
    start_index: int = Field(0, ge=0)
    seed: int = 0
    n: int = Field(1000, ge=1)
    params: Dict[str, Any] = Field(default_factory=dict)


class SearchStrategy(metaclass=ABCMeta):
    """
    탐색 전략 추상 클래스

    사용자 전략은 이 클래스를 상속하고 `search`를 구현한 뒤
    설정에서 `strategy.name: my_package.my_module.MyStrategy` 로 지정합니다.
    """

    name = "strategy"

    def __init__(self, config: StrategyConfig):
        self.config = config
        self.params = dict(config.params)

    @abstractmethod
    def search(self, provider: ChannelProvider, evaluator: FomEvaluator) -> SearchResult:
        """(하위 클래스 구현 필수) 탐색 실행"""

    def log_info(self, message: str):
        logger.info(f"[{self.name}] {message}")


class ExhaustiveStrategy(SearchStrategy):
    name = "exhaustive"

    def search(self, provider, evaluator):
        return exhaustive_search(provider, evaluator.cfg, evaluator=evaluator)


class CoordinateDescentStrategy(SearchStrategy):
    """starts == 1이면 start_index에서, 그 이상이면 시드로 뽑은 시작점들에서 실행"""

    name = "coordinate_descent"

    def search(self, provider, evaluator):
        cfg = self.config
        if cfg.starts == 1:
            start = mask_from_index(cfg.start_index, provider.n_elements)
            return coordinate_descent(
                provider, start, cfg.max_sweeps, evaluator.cfg, evaluator=evaluator
            )
        return multi_start_coordinate_descent(
            provider, cfg.starts, cfg.seed, cfg.max_sweeps, evaluator.cfg, evaluator=evaluator
        )


class RandomStrategy(SearchStrategy):
    name = "random"

    def search(self, provider, evaluator):
        return random_search(
            provider, self.config.n, self.config.seed, evaluator.cfg, evaluator=evaluator
        )


BUILTIN_STRATEGIES: Dict[str, Type[SearchStrategy]] = {
    ExhaustiveStrategy.name: ExhaustiveStrategy,
    CoordinateDescentStrategy.name: CoordinateDescentStrategy,
    RandomStrategy.name: RandomStrategy,
}


class StrategyManager:
    """전략 이름 → 전략 인스턴스 생성 및 실행"""

    def __init__(self, config: StrategyConfig):
        self.config = config
        self.strategy = self._create_strategy(config)

    def _import_strategy_class(self, class_path: str) -> Optional[Type[SearchStrategy]]:
        """
        점 경로로 전략 클래스를 가져옵니다.

        Args:
            class_path: "package.module.ClassName"
        """
        try:
            module_path, class_name = class_path.rsplit(".", 1)
            module = importlib.import_module(module_path)
            return getattr(module, class_name)
        except (ValueError, ImportError, AttributeError) as e:
            logger.error(f"전략 클래스를 로드할 수 없습니다: {class_path}, {e}")
            return None

    def _create_strategy(self, config: StrategyConfig) -> SearchStrategy:
        strategy_class = BUILTIN_STRATEGIES.get(config.name)
        if strategy_class is None and "." in config.name:
            strategy_class = self._import_strategy_class(config.name)
        if strategy_class is None:
            raise ConfigError(
                f"unknown strategy {config.name!r}; expected one of "
                f"{sorted(BUILTIN_STRATEGIES)} or a dotted class path"
            )
        if not (isinstance(strategy_class, type) and issubclass(strategy_class, SearchStrategy)):
            raise ConfigError(f"{config.name} is not a SearchStrategy subclass")
        return strategy_class(config)

    def run(
        self, provider: ChannelProvider, fom_config: FomConfig, threads: int = 1
    ) -> SearchResult:
        """전략 실행 (한 번의 실행 동안 평가 메모 공유)"""
        evaluator = FomEvaluator(provider, fom_config, threads=threads)
        self.strategy.log_info(f"🚀 탐색 시작: {provider}")
        result = self.strategy.search(provider, evaluator)
        self.strategy.log_info(
            f"📊 평가 {result.evaluations}회 (계산 {evaluator.stats.computed}, "
            f"캐시 {evaluator.stats.cache_hits})"
        )
        return result
