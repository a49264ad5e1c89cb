"""Deployment configuration: one INI file declaring every component.

Each component section names its listen address or backend URL, mode
flags, and the secrets it consumes. `check_config` verifies that every
referenced secret resolves before anything starts.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .secrets import SecretError, load_secret

COMPONENT_SECTIONS = ("backend", "sentiment", "reddit_crawler", "market_crawler", "dashboard")


class ConfigError(ValueError):
    """Malformed or incomplete deployment configuration."""


@dataclass(frozen=True)
class ComponentConfig:
    name: str
    listen: str | None = None
    backend_url: str | None = None
    production: bool = False
    poll_interval: float | None = None
    secret_names: tuple[str, ...] = ()
    extra: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class DeploymentConfig:
    secrets_dir: Path
    store_volume: str
    components: dict[str, ComponentConfig]

    def component(self, name: str) -> ComponentConfig:
        return self.components[name]


def _split_csv(raw: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in raw.split(",") if part.strip())


def parse_deployment_config(path: str | Path) -> DeploymentConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser()
    parser.read(path, encoding="utf-8")

    if "deployment" not in parser:
        raise ConfigError("missing [deployment] section")
    deployment = parser["deployment"]
    secrets_dir = Path(deployment.get("secrets_dir", "./secrets"))
    store_volume = deployment.get("store_volume", "store-data")

    missing = [s for s in COMPONENT_SECTIONS if s not in parser]
    if missing:
        raise ConfigError(f"missing component section(s): {missing}")

    components = {}
    for section in COMPONENT_SECTIONS:
        raw = parser[section]
        known = {"listen", "backend_url", "production", "poll_interval", "secrets"}
        extra = {k: v for k, v in raw.items() if k not in known}
        try:
            production = raw.getboolean("production", fallback=False)
        except ValueError:
            raise ConfigError(f"[{section}] production must be true/false") from None
        components[section] = ComponentConfig(
            name=section,
            listen=raw.get("listen"),
            backend_url=raw.get("backend_url"),
            production=production,
            poll_interval=raw.getfloat("poll_interval", fallback=None),
            secret_names=_split_csv(raw.get("secrets", "")),
            extra=extra,
        )
    return DeploymentConfig(secrets_dir=secrets_dir, store_volume=store_volume,
                            components=components)


def check_config(config: DeploymentConfig) -> list[str]:
    """All reasons the deployment cannot start; empty means good to go."""
    problems = []
    for component in config.components.values():
        if component.listen is None and component.backend_url is None:
            problems.append(f"{component.name}: needs listen or backend_url")
        for secret_name in component.secret_names:
            try:
                load_secret(secret_name, config.secrets_dir)
            except SecretError as exc:
                problems.append(f"{component.name}: {exc}")
    return problems
