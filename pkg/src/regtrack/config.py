"""TOML configuration: [server], [ingest], [model], and [auth] sections."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass(frozen=True)
class ServerConfig:
    bind: str = "127.0.0.1"
    port: int = 8000
    static_dir: str | None = None


@dataclass(frozen=True)
class IngestConfig:
    timeout_secs: float = 30.0
    user_agent: str = "regtrack/0.1"
    workers: int = 4
    registry: str | None = None  # path to the source registry JSONL
    fixture_root: str | None = None  # base dir for relative FileFixture locators
    day: int | None = None  # replay day for fixture fetchers


@dataclass(frozen=True)
class ModelConfig:
    l2_lambda: float = 1.0
    max_epochs: int = 1000
    tol: float = 1e-6
    step1_threshold: float = 0.5
    rule_threshold: float = 0.5
    rule_min_support: int = 3
    nb_alpha: float = 1.0
    test_fraction: float = 0.3


@dataclass(frozen=True)
class UserEntry:
    user_id: str
    display_name: str
    role: str
    region_scopes: tuple[str, ...]
    token: str


@dataclass(frozen=True)
class AppConfig:
    server: ServerConfig = field(default_factory=ServerConfig)
    ingest: IngestConfig = field(default_factory=IngestConfig)
    model: ModelConfig = field(default_factory=ModelConfig)
    users: tuple[UserEntry, ...] = ()
    base_dir: Path = field(default_factory=Path.cwd)

    def resolve(self, path: str | None) -> Path | None:
        """Resolve a config-relative path."""
        if path is None:
            return None
        p = Path(path)
        return p if p.is_absolute() else self.base_dir / p


def load_config(path: str | Path | None) -> AppConfig:
    if path is None:
        return AppConfig()
    path = Path(path)
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)

    server = ServerConfig(**raw.get("server", {}))
    ingest = IngestConfig(**raw.get("ingest", {}))
    model = ModelConfig(**raw.get("model", {}))
    auth = raw.get("auth", {})
    users = tuple(
        UserEntry(
            user_id=u["user_id"],
            display_name=u.get("display_name", u["user_id"]),
            role=u.get("role", "Officer"),
            region_scopes=tuple(u.get("region_scopes", [])),
            token=u["token"],
        )
        for u in auth.get("users", [])
    )
    return AppConfig(
        server=server,
        ingest=ingest,
        model=model,
        users=users,
        base_dir=path.resolve().parent,
    )
