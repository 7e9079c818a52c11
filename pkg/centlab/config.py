from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import yaml

from centlab.constants import (
    DEFAULT_DENSE_TABLE_LIMIT,
    DEFAULT_FULL_SCAN_LIMIT,
    DEFAULT_GRAPH_VERTEX_BOUND,
    DEFAULT_ISO_BUDGET,
    DEFAULT_ISO_ORDER_BOUND,
    DEFAULT_LOG_LEVEL,
    DEFAULT_MAX_ORDER,
    DEFAULT_PRIMES,
    EXTENDED_PRIMES,
)


@dataclass(slots=True)
class EngineConfig:
    max_order: int = DEFAULT_MAX_ORDER
    dense_table_limit: int = DEFAULT_DENSE_TABLE_LIMIT
    full_scan_limit: int = DEFAULT_FULL_SCAN_LIMIT


@dataclass(slots=True)
class IsomorphismConfig:
    order_bound: int = DEFAULT_ISO_ORDER_BOUND
    budget: int = DEFAULT_ISO_BUDGET
    graph_vertex_bound: int = DEFAULT_GRAPH_VERTEX_BOUND


@dataclass(slots=True)
class VerifyConfig:
    primes: list[int] = field(default_factory=lambda: list(DEFAULT_PRIMES))
    extended_primes: list[int] = field(default_factory=lambda: list(EXTENDED_PRIMES))
    threads: int = 1
    timings: bool = False
    progress: bool = True


@dataclass(slots=True)
class ExportConfig:
    out_dir: str = "./exports"


@dataclass(slots=True)
class LoggingConfig:
    level: str = DEFAULT_LOG_LEVEL


@dataclass(slots=True)
class AppConfig:
    engine: EngineConfig = field(default_factory=EngineConfig)
    isomorphism: IsomorphismConfig = field(default_factory=IsomorphismConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)
    exports: ExportConfig = field(default_factory=ExportConfig)
    logging: LoggingConfig = field(default_factory=LoggingConfig)

    @staticmethod
    def default() -> AppConfig:
        return AppConfig()

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def load_config(path: str | Path | None) -> AppConfig:
    if path is None:
        return AppConfig.default()

    config_path = Path(path)
    if not config_path.exists():
        return AppConfig.default()

    with config_path.open("r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh) or {}

    engine_raw = raw.get("engine", {}) or {}
    iso_raw = raw.get("isomorphism", {}) or {}
    verify_raw = raw.get("verify", {}) or {}
    exports_raw = raw.get("exports", {}) or {}
    logging_raw = raw.get("logging", {}) or {}

    return AppConfig(
        engine=EngineConfig(
            max_order=int(engine_raw.get("max_order", DEFAULT_MAX_ORDER)),
            dense_table_limit=int(engine_raw.get("dense_table_limit", DEFAULT_DENSE_TABLE_LIMIT)),
            full_scan_limit=int(engine_raw.get("full_scan_limit", DEFAULT_FULL_SCAN_LIMIT)),
        ),
        isomorphism=IsomorphismConfig(
            order_bound=int(iso_raw.get("order_bound", DEFAULT_ISO_ORDER_BOUND)),
            budget=int(iso_raw.get("budget", DEFAULT_ISO_BUDGET)),
            graph_vertex_bound=int(iso_raw.get("graph_vertex_bound", DEFAULT_GRAPH_VERTEX_BOUND)),
        ),
        verify=VerifyConfig(
            primes=[int(p) for p in verify_raw.get("primes", DEFAULT_PRIMES)],
            extended_primes=[int(p) for p in verify_raw.get("extended_primes", EXTENDED_PRIMES)],
            threads=max(1, int(verify_raw.get("threads", 1))),
            timings=bool(verify_raw.get("timings", False)),
            progress=bool(verify_raw.get("progress", True)),
        ),
        exports=ExportConfig(
            out_dir=str(exports_raw.get("out_dir", "./exports")),
        ),
        logging=LoggingConfig(
            level=str(logging_raw.get("level", DEFAULT_LOG_LEVEL)),
        ),
    )


def dump_default_config(path: str | Path) -> None:
    payload = AppConfig.default().to_dict()
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as fh:
        yaml.safe_dump(payload, fh, sort_keys=False)
