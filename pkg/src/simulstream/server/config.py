"""Server-side configuration (the first of the two YAML files)."""

from dataclasses import dataclass
from pathlib import Path

import yaml


@dataclass(frozen=True)
class ServerConfig:
    host: str = "127.0.0.1"
    port: int = 8765
    pool_size: int = 1
    log_path: Path | None = None

    def __post_init__(self):
        if self.pool_size < 1:
            raise ValueError("pool_size must be >= 1")


def load_server_config(path: str | Path) -> ServerConfig:
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"server config {path} must be a YAML mapping")
    log_path = data.get("log_path")
    return ServerConfig(
        host=str(data.get("host", "127.0.0.1")),
        port=int(data.get("port", 8765)),
        pool_size=int(data.get("pool_size", 1)),
        log_path=Path(log_path) if log_path else None,
    )
