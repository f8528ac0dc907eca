# -*- coding: utf-8 -*-
"""
스윕 아카이브 모듈

측정 캠페인을 `manifest.json` + 마스크별 파일(`mask_<index>.csv` 또는 .s2p)로 저장/로드합니다.
CSV 열은 freq_hz,re,im 이며 double 값은 왕복 시 비트 단위로 동일합니다.
주파수 보간은 하지 않으며 그리드가 다르면 오류입니다.
"""

import json
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.core.exceptions import ArchiveError, ParseError
from src.core.frequency_grid import FrequencyGrid, GridConfig
from src.core.mask import mask_from_index
from src.core.sweep import ChannelSweep, MaskSweepDataset, SweepOrigin
from src.data_collection.touchstone import load_touchstone_sweep
from src.utils.file_utils import atomic_write_text, write_csv_atomic

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
ARCHIVE_VERSION = 1
CSV_COLUMNS = ["freq_hz", "re", "im"]
MASK_FILE_PATTERN = re.compile(r"^mask_(\d+)\.(csv|s2p)$", re.IGNORECASE)

# 파일 그리드와 매니페스트 그리드 비교 상대 오차
GRID_RTOL = 1e-12


class ArchiveEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mask_index: int = Field(ge=0)
    path: str


class SweepArchiveManifest(BaseModel):
    """manifest.json 스키마"""

    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = ARCHIVE_VERSION
    n_elements: int = Field(ge=0, le=32)
    grid: GridConfig
    entries: List[ArchiveEntry]
    magnitude_convention: Literal["linear-complex"] = "linear-complex"
    origin: SweepOrigin = SweepOrigin.MEASURED
    # VNA 점 수, IF 대역폭, 출력 등 (선택)
    metadata: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_entries(self) -> "SweepArchiveManifest":
        seen = set()
        limit = 1 << self.n_elements
        for entry in self.entries:
            if entry.mask_index >= limit:
                raise ValueError(
                    f"mask index {entry.mask_index} out of range for {self.n_elements} elements"
                )
            if entry.mask_index in seen:
                raise ValueError(f"duplicate mask index {entry.mask_index}")
            seen.add(entry.mask_index)
        return self


def read_manifest(manifest_path: Union[str, Path]) -> SweepArchiveManifest:
    """매니페스트 읽기 및 검증"""
    manifest_path = Path(manifest_path)
    try:
        data = json.loads(manifest_path.read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise ArchiveError(f"manifest not found: {manifest_path}") from e
    except (OSError, json.JSONDecodeError) as e:
        raise ArchiveError(f"cannot read manifest {manifest_path}: {e}") from e
    try:
        return SweepArchiveManifest.model_validate(data)
    except ValidationError as e:
        raise ArchiveError(f"invalid manifest {manifest_path}: {e}") from e


def write_manifest(manifest: SweepArchiveManifest, directory: Union[str, Path]) -> Path:
    text = json.dumps(manifest.model_dump(mode="json"), indent=2, ensure_ascii=False)
    return atomic_write_text(Path(directory) / MANIFEST_NAME, text + "\n")


def sweep_frame(sweep: ChannelSweep) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "freq_hz": sweep.grid.frequencies(),
            "re": sweep.samples.real,
            "im": sweep.samples.imag,
        }
    )


def export_sweep_archive(
    dataset: MaskSweepDataset,
    directory: Union[str, Path],
    metadata: Optional[Dict[str, Any]] = None,
) -> Path:
    """
    데이터셋을 아카이브로 저장

    Args:
        dataset: 저장할 데이터셋
        directory: 대상 디렉토리 (없으면 생성)
        metadata: 매니페스트에 기록할 선택 메타데이터

    Returns:
        Path: manifest.json 경로

    Raises:
        ArchiveError: 쓰기 실패 시 (경로 포함)
    """
    directory = Path(directory)
    entries = []
    for mask, sweep in zip(dataset.masks, dataset.sweeps):
        name = f"mask_{mask.index}.csv"
        write_csv_atomic(sweep_frame(sweep), directory / name)
        entries.append(ArchiveEntry(mask_index=mask.index, path=name))

    manifest = SweepArchiveManifest(
        n_elements=dataset.n_elements,
        grid=GridConfig.from_grid(dataset.grid),
        entries=entries,
        origin=dataset.origin,
        metadata=dict(metadata or {}),
    )
    manifest_path = write_manifest(manifest, directory)
    logger.info(f"✅ 아카이브 저장: {manifest_path} ({len(entries)}개 마스크)")
    return manifest_path


def _read_csv_sweep(path: Path, grid: FrequencyGrid) -> ChannelSweep:
    try:
        frame = pd.read_csv(path, float_precision="round_trip")
    except FileNotFoundError as e:
        raise ArchiveError(f"missing sweep file: {path}") from e
    except (OSError, ValueError, pd.errors.ParserError) as e:
        raise ArchiveError(f"cannot read sweep file {path}: {e}") from e

    if list(frame.columns) != CSV_COLUMNS:
        raise ArchiveError(f"{path}: expected columns {CSV_COLUMNS}, got {list(frame.columns)}")
    if len(frame) != grid.count:
        raise ArchiveError(
            f"{path}: {len(frame)} points but the manifest grid has {grid.count}"
        )
    freqs = frame["freq_hz"].to_numpy(dtype=float)
    if not np.allclose(freqs, grid.frequencies(), rtol=GRID_RTOL, atol=0.0):
        raise ArchiveError(f"{path}: frequency axis does not match the manifest grid")
    samples = np.empty(len(frame), dtype=np.complex128)
    samples.real = frame["re"].to_numpy(dtype=float)
    samples.imag = frame["im"].to_numpy(dtype=float)
    return ChannelSweep(grid, samples)


def _read_s2p_sweep(path: Path, grid: FrequencyGrid) -> ChannelSweep:
    if not path.exists():
        raise ArchiveError(f"missing sweep file: {path}")
    try:
        sweep = load_touchstone_sweep(path)
    except (OSError, ParseError) as e:
        raise ArchiveError(f"cannot read sweep file {path}: {e}") from e
    if sweep.grid.count != grid.count or not np.allclose(
        sweep.grid.frequencies(), grid.frequencies(), rtol=GRID_RTOL, atol=0.0
    ):
        raise ArchiveError(f"{path}: grid {sweep.grid} does not match the manifest grid {grid}")
    return ChannelSweep(grid, sweep.samples)


def _read_entry(base: Path, entry: ArchiveEntry, grid: FrequencyGrid) -> ChannelSweep:
    path = base / entry.path
    if path.suffix.lower() == ".s2p":
        return _read_s2p_sweep(path, grid)
    return _read_csv_sweep(path, grid)


def load_sweep_archive(manifest_path: Union[str, Path], threads: int = 1) -> MaskSweepDataset:
    """
    아카이브 로드

    Args:
        manifest_path: manifest.json 경로 (디렉토리를 주면 그 안의 manifest.json)
        threads: 병렬 로드 스레드 수

    Returns:
        MaskSweepDataset: 매니페스트 순서를 유지한 데이터셋

    Raises:
        ArchiveError: 파일 누락, 그리드 불일치, 중복 인덱스 (첫 번째 오류 항목)
    """
    manifest_path = Path(manifest_path)
    if manifest_path.is_dir():
        manifest_path = manifest_path / MANIFEST_NAME
    manifest = read_manifest(manifest_path)
    if not manifest.entries:
        raise ArchiveError(f"manifest {manifest_path} has no entries")

    grid = manifest.grid.to_grid()
    base = manifest_path.parent
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            sweeps = list(executor.map(lambda e: _read_entry(base, e, grid), manifest.entries))
    else:
        sweeps = [_read_entry(base, e, grid) for e in manifest.entries]

    masks = [mask_from_index(e.mask_index, manifest.n_elements) for e in manifest.entries]
    dataset = MaskSweepDataset(masks, sweeps, origin=manifest.origin)
    logger.info(f"✅ 아카이브 로드: {manifest_path} ({len(dataset)}개 마스크, {grid})")
    return dataset


def index_touchstone_directory(
    directory: Union[str, Path],
    n_elements: int,
    metadata: Optional[Dict[str, Any]] = None,
) -> Path:
    """
    `mask_<index>.s2p` 파일이 있는 디렉토리에 매니페스트를 생성

    그리드는 인덱스가 가장 작은 파일에서 가져오며 나머지는 로드 시 검증됩니다.
    """
    directory = Path(directory)
    found = []
    for path in sorted(directory.iterdir()):
        match = MASK_FILE_PATTERN.match(path.name)
        if match and match.group(2).lower() == "s2p":
            found.append((int(match.group(1)), path.name))
    if not found:
        raise ArchiveError(f"no mask_<index>.s2p files in {directory}")
    found.sort()

    first = directory / found[0][1]
    try:
        grid = load_touchstone_sweep(first).grid
    except ParseError as e:
        raise ArchiveError(f"cannot read {first}: {e}") from e

    try:
        manifest = SweepArchiveManifest(
            n_elements=n_elements,
            grid=GridConfig.from_grid(grid),
            entries=[ArchiveEntry(mask_index=i, path=name) for i, name in found],
            origin=SweepOrigin.MEASURED,
            metadata=dict(metadata or {}),
        )
    except ValidationError as e:
        raise ArchiveError(f"cannot index {directory}: {e}") from e
    path = write_manifest(manifest, directory)
    logger.info(f"✅ Touchstone 인덱스 생성: {path} ({len(found)}개 파일)")
    return path
