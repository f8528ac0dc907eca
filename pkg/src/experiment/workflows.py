# -*- coding: utf-8 -*-
"""
실험 워크플로 모듈

simulate / characterize / optimize / report 네 가지 배치 작업을 구현합니다.
모든 산출물은 임시 디렉토리에 만든 뒤 한 번에 교체되며, 실패 시 부분 산출물이 남지 않습니다.

출력 디렉토리 구성:
    simulate      manifest.json, mask_<index>.csv, run_metadata.json
    characterize  std_vs_freq.csv, band.json, run_metadata.json, [std_vs_freq.svg]
    optimize      fom_trace.csv, best.json, cir_<label>.csv, run_metadata.json, [fom_trace.svg, cir_overlay.svg]
"""

import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from src.core.exceptions import ConfigError, DomainError, ReportError
from src.core.frequency_grid import FrequencyGrid
from src.core.mask import Mask, mask_from_index
from src.core.sweep import MaskSweepDataset, SweepOrigin
from src.data_collection.sweep_archive import export_sweep_archive, load_sweep_archive
from src.experiment import plotting
from src.optimization.channel_provider import (
    ChannelProvider,
    DatasetChannelProvider,
    SceneChannelProvider,
)
from src.optimization.evaluator import resolve_threads
from src.optimization.search import SearchResult, baseline_masks
from src.optimization.strategy_manager import StrategyManager
from src.physics.scene import build_scene
from src.signal_processing.characterization import mask_std, select_band_indices
from src.signal_processing.fom import (
    FomConfig,
    cir_from_sweep,
    cutoff_index,
    delay_spread,
    find_peak,
    fom,
)
from src.utils.config_manager import ExperimentConfig
from src.utils.file_utils import atomic_output_directory, atomic_write_text, write_csv_atomic
from src.utils.metadata_manager import RunMetadataManager, load_run_metadata

logger = logging.getLogger(__name__)

CIR_LABELS = ("best", "worst", "all_on", "all_off")
REPORT_REQUIRED = ("best.json", "fom_trace.csv")

# 아카이브 그리드를 설정 대역으로 자를 때의 상대 여유
BAND_RTOL = 1e-12


@dataclass
class RunOptions:
    """명령행에서 넘어오는 실행 옵션"""

    out_dir: Optional[Path] = None
    force: bool = False
    svg: bool = False
    threads: int = 0
    masks: Optional[int] = None
    config_hash: str = ""


def _output_dir(config: ExperimentConfig, options: RunOptions, command: str) -> Path:
    if options.out_dir is not None:
        return Path(options.out_dir)
    return Path(config.io.output_dir) / command


def _write_json(path: Path, data: Dict[str, Any]) -> Path:
    return atomic_write_text(path, json.dumps(data, indent=2, ensure_ascii=False) + "\n")


def _simulate_dataset(
    provider: SceneChannelProvider, masks: List[Mask], threads: int
) -> MaskSweepDataset:
    if threads > 1 and len(masks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            sweeps = list(executor.map(provider.get_sweep, masks))
    else:
        sweeps = [provider.get_sweep(m) for m in masks]
    return MaskSweepDataset(masks, sweeps, origin=SweepOrigin.SIMULATED)


def _random_distinct_masks(n_elements: int, count: int, seed: int) -> List[Mask]:
    total = 1 << n_elements
    if count > total:
        raise DomainError(f"cannot draw {count} distinct masks from {total} states")
    rng = np.random.default_rng(seed)
    indices = rng.choice(total, size=count, replace=False)
    return [mask_from_index(int(i), n_elements) for i in indices]


def select_simulation_masks(config: ExperimentConfig, n_elements: int) -> List[Mask]:
    """simulate 섹션에 따른 마스크 목록 (first / list / random)"""
    sim = config.simulate
    total = 1 << n_elements
    if sim.mode == "list":
        return [mask_from_index(i, n_elements) for i in sim.indices]
    if sim.mode == "random":
        return _random_distinct_masks(n_elements, sim.count, sim.seed)
    if sim.count > total:
        logger.warning(f"⚠️ simulate.count {sim.count} > 2^{n_elements}; {total}개만 생성합니다")
    return [mask_from_index(i, n_elements) for i in range(min(sim.count, total))]


def restrict_to_band(dataset: MaskSweepDataset, grid: FrequencyGrid) -> MaskSweepDataset:
    """
    측정 데이터셋을 설정 대역 [f_start, f_stop] 안의 그리드 점으로 자름

    보간 없이 기존 그리드 점만 사용합니다.
    """
    freqs = dataset.grid.frequencies()
    inside = np.flatnonzero(
        (freqs >= grid.f_start * (1 - BAND_RTOL)) & (freqs <= grid.f_stop * (1 + BAND_RTOL))
    )
    if inside.size < 2:
        raise ConfigError(
            f"archive grid {dataset.grid} has fewer than 2 points inside the configured band {grid}"
        )
    i0, i1 = int(inside[0]), int(inside[-1])
    if i0 == 0 and i1 == dataset.grid.count - 1:
        return dataset
    sweeps = [s.restrict(i0, i1) for s in dataset.sweeps]
    return MaskSweepDataset(dataset.masks, sweeps, origin=dataset.origin)


def build_provider(
    config: ExperimentConfig,
    threads: int = 1,
    grid: Optional[FrequencyGrid] = None,
    restrict: bool = True,
) -> ChannelProvider:
    """
    설정의 채널 소스로 공급자 생성

    Args:
        config: 실험 설정
        threads: 아카이브 로드 스레드 수
        grid: 시뮬레이션 그리드 (기본: config.grid)
        restrict: 측정 데이터를 config.grid 대역으로 자를지 여부
    """
    if config.simulated:
        scene = build_scene(config.scene)
        return SceneChannelProvider(scene, grid or config.grid.to_grid())
    dataset = load_sweep_archive(config.io.archive, threads=threads)
    if restrict:
        dataset = restrict_to_band(dataset, config.grid.to_grid())
    return DatasetChannelProvider(dataset)


def cmd_simulate(config: ExperimentConfig, options: RunOptions) -> Path:
    """
    설정된 마스크 목록의 스윕을 시뮬레이션해 아카이브로 저장

    Returns:
        Path: 출력 디렉토리
    """
    if not config.simulated:
        raise ConfigError("simulate needs a 'scene' channel source")
    threads = resolve_threads(options.threads)
    out_dir = _output_dir(config, options, "simulate")
    metadata = RunMetadataManager("simulate", options.config_hash)

    with atomic_output_directory(out_dir, force=options.force) as staging:
        provider = build_provider(config, threads)
        masks = select_simulation_masks(config, provider.n_elements)
        logger.info(f"🚀 시뮬레이션 시작: {len(masks)}개 마스크, {provider.grid}")
        started = time.perf_counter()
        dataset = _simulate_dataset(provider, masks, threads)
        elapsed = time.perf_counter() - started

        export_sweep_archive(
            dataset,
            staging,
            metadata={"source": "simulated", "scene_seed": config.scene.seed},
        )
        metadata.update(
            masks=len(masks),
            n_elements=provider.n_elements,
            grid=provider.grid.to_dict(),
            simulate_seconds=round(elapsed, 3),
        )
        metadata.save(staging)

    print(f"simulate: {len(masks)} masks, N={provider.n_elements}, grid {provider.grid}")
    print(f"simulate: {elapsed:.2f} s -> {out_dir}")
    return out_dir


def characterization_dataset(config: ExperimentConfig, options: RunOptions) -> MaskSweepDataset:
    """characterize에 쓸 데이터셋 (시뮬레이션: 넓은 대역의 무작위 마스크 / 측정: 아카이브 앞쪽 K개)"""
    threads = resolve_threads(options.threads)
    settings = config.characterization
    count = options.masks or settings.masks

    if config.simulated:
        provider = build_provider(config, threads, grid=settings.grid.to_grid())
        total = 1 << provider.n_elements
        masks = _random_distinct_masks(provider.n_elements, min(count, total), settings.seed)
        return _simulate_dataset(provider, masks, threads)

    dataset = load_sweep_archive(config.io.archive, threads=threads)
    if options.masks and options.masks < len(dataset):
        dataset = MaskSweepDataset(
            dataset.masks[: options.masks], dataset.sweeps[: options.masks], dataset.origin
        )
    return dataset


def cmd_characterize(config: ExperimentConfig, options: RunOptions) -> Dict[str, Any]:
    """
    주파수별 마스크 표준편차와 선택 대역 산출

    Returns:
        Dict[str, Any]: band.json 내용
    """
    out_dir = _output_dir(config, options, "characterize")
    settings = config.characterization
    metadata = RunMetadataManager("characterize", options.config_hash)

    with atomic_output_directory(out_dir, force=options.force) as staging:
        dataset = characterization_dataset(config, options)
        if len(dataset) < 2:
            raise DomainError(f"need >= 2 masks for characterization, got {len(dataset)}")

        std = mask_std(dataset, scale=settings.magnitude_scale, ddof=settings.ddof)
        column = f"std_{settings.magnitude_scale}"
        frame = pd.DataFrame({"freq_hz": dataset.grid.frequencies(), column: std})
        write_csv_atomic(frame, staging / "std_vs_freq.csv")

        i0, i1 = select_band_indices(std, settings.band_fraction)
        band_grid = dataset.grid.sub_grid(i0, i1)
        band = {
            **band_grid.to_dict(),
            "start_index": i0,
            "stop_index": i1,
            "fraction": settings.band_fraction,
            "magnitude_scale": settings.magnitude_scale,
            "ddof": settings.ddof,
            "masks": len(dataset),
            "origin": dataset.origin.value,
        }
        _write_json(staging / "band.json", band)
        if options.svg:
            plotting.plot_std_vs_freq(
                frame, staging / "std_vs_freq.svg", band=(band_grid.f_start, band_grid.f_stop)
            )
        metadata.update(grid=dataset.grid.to_dict(), masks=len(dataset))
        metadata.save(staging)

    print(
        f"characterize: {len(dataset)} masks, selected band "
        f"{band_grid.f_start / 1e9:.4f}-{band_grid.f_stop / 1e9:.4f} GHz ({band_grid.count} pts)"
    )
    return band


def _cir_summary(provider: ChannelProvider, mask: Mask, cfg: FomConfig) -> Dict[str, Any]:
    cir = cir_from_sweep(provider.get_sweep(mask), cfg)
    peak = find_peak(cir, cfg)
    return {
        "mask_index": mask.index,
        "mask_bits": str(mask),
        "fom": fom(cir, cfg),
        "delay_spread_s": delay_spread(cir, cfg),
        "t_o_s": peak.t_o,
        "cir": cir,
    }


def _cir_frame(summary: Dict[str, Any], cfg: FomConfig) -> pd.DataFrame:
    cir = summary["cir"]
    last = cutoff_index(cir, cfg)
    samples = cir.samples[: last + 1]
    return pd.DataFrame(
        {
            "t_s": cir.times[: last + 1],
            "re": samples.real,
            "im": samples.imag,
            "abs2": cir.power[: last + 1],
        }
    )


def cmd_optimize(config: ExperimentConfig, options: RunOptions) -> SearchResult:
    """
    설정된 전략으로 마스크를 탐색하고 FOM 추이, 최고/최저/기준 마스크 CIR을 기록

    Returns:
        SearchResult: 탐색 결과
    """
    threads = resolve_threads(options.threads)
    out_dir = _output_dir(config, options, "optimize")
    cfg = config.fom
    metadata = RunMetadataManager("optimize", options.config_hash)

    with atomic_output_directory(out_dir, force=options.force) as staging:
        provider = build_provider(config, threads)
        started = time.perf_counter()
        result = StrategyManager(config.strategy).run(provider, cfg, threads=threads)
        elapsed = time.perf_counter() - started

        targets: Dict[str, Optional[Mask]] = {
            "best": result.best_mask,
            "worst": result.worst_mask,
            "all_on": None,
            "all_off": None,
        }
        if provider.n_elements >= 1:
            all_off, all_on = baseline_masks(provider.n_elements)
            targets["all_off"] = all_off if provider.is_available(all_off) else None
            targets["all_on"] = all_on if provider.is_available(all_on) else None

        summaries: Dict[str, Optional[Dict[str, Any]]] = {}
        frames: Dict[str, pd.DataFrame] = {}
        for label in CIR_LABELS:
            mask = targets[label]
            if mask is None:
                logger.warning(f"⚠️ {label} 마스크를 사용할 수 없어 건너뜁니다")
                summaries[label] = None
                continue
            summary = _cir_summary(provider, mask, cfg)
            if label == "best":
                t_step = summary["cir"].t_step
            frames[label] = _cir_frame(summary, cfg)
            write_csv_atomic(frames[label], staging / f"cir_{label}.csv")
            summaries[label] = {k: v for k, v in summary.items() if k != "cir"}

        trace = result.trace_frame()
        write_csv_atomic(trace, staging / "fom_trace.csv")

        best = {
            "strategy": result.strategy,
            "n_elements": provider.n_elements,
            "origin": provider.origin.value,
            "evaluations": result.evaluations,
            "converged": result.converged,
            "passes": result.passes,
            "median_fom": float(trace["fom"].median()),
            "grid": provider.grid.to_dict(),
            "t_step_s": t_step,
            "fom_config": cfg.model_dump(mode="json"),
            **summaries,
        }
        _write_json(staging / "best.json", best)

        if options.svg:
            plotting.plot_fom_trace(trace, staging / "fom_trace.svg")
            plotting.plot_cir_overlay(frames, staging / "cir_overlay.svg", cutoff=cfg.cutoff)

        metadata.update(
            strategy=result.strategy,
            evaluations=result.evaluations,
            search_seconds=round(elapsed, 3),
            threads=threads,
            grid=provider.grid.to_dict(),
            t_step_s=t_step,
        )
        metadata.save(staging)

    print(
        f"optimize: {result.strategy}, {result.evaluations} evaluations, "
        f"best mask {result.best_mask.index} FOM {result.best_fom:.6f}, "
        f"worst mask {result.worst_mask.index} FOM {result.worst_fom:.6f}"
    )
    print(f"optimize: {elapsed:.2f} s -> {out_dir}")
    return result


def _ratio(numerator: Optional[float], denominator: Optional[float]) -> float:
    if numerator is None or not denominator:
        return float("nan")
    return numerator / denominator


def cmd_report(input_dir: Path) -> pd.DataFrame:
    """
    optimize 출력 디렉토리를 요약 표로 출력 (물리 재계산 없음)
    run_metadata.json이 있으면 설정 해시와 종료 시각도 출력합니다.

    Returns:
        pd.DataFrame: label, mask_index, fom, delay_spread_ns, vs_all_on, vs_all_off

    Raises:
        ReportError: 필수 산출물이 없는 경우 (누락 파일 목록 포함)
    """
    input_dir = Path(input_dir)
    missing = [name for name in REPORT_REQUIRED if not (input_dir / name).is_file()]
    if missing:
        raise ReportError(
            f"{input_dir} is missing optimize artifacts: {', '.join(missing)}", missing
        )

    try:
        best = json.loads((input_dir / "best.json").read_text(encoding="utf-8"))
        trace = pd.read_csv(input_dir / "fom_trace.csv", float_precision="round_trip")
    except (OSError, ValueError) as e:
        raise ReportError(f"cannot read artifacts in {input_dir}: {e}") from e

    def entry_fom(label: str) -> Optional[float]:
        entry = best.get(label)
        return None if entry is None else entry["fom"]

    rows = []
    for label in CIR_LABELS:
        entry = best.get(label)
        rows.append(
            {
                "label": label,
                "mask_index": None if entry is None else entry["mask_index"],
                "fom": float("nan") if entry is None else entry["fom"],
                "delay_spread_ns": float("nan") if entry is None else entry["delay_spread_s"] * 1e9,
                "vs_all_on": _ratio(entry_fom(label), entry_fom("all_on")),
                "vs_all_off": _ratio(entry_fom(label), entry_fom("all_off")),
            }
        )
    table = pd.DataFrame(rows)

    print(f"report: {input_dir}")
    print(
        f"strategy {best.get('strategy')}, {len(trace)} evaluations, "
        f"median FOM {trace['fom'].median():.6f}"
    )
    metadata = load_run_metadata(input_dir)
    if metadata is not None:
        config_hash = metadata.get("config_hash", "")
        print(f"config {config_hash[:12]}, finished {metadata.get('finished_at')}")
    print(table.to_string(index=False, float_format=lambda v: f"{v:.6g}"))
    return table
