"""Container-orchestration manifest generator.

Emits a deterministic multi-container compose document from a deployment
config: one container per component, service-name networking, file-based
secret mounts, and startup ordering (store volume, then backend, then
crawlers and dashboard). The emitter is a pure generator; nothing at
runtime depends on a container engine.
"""

from __future__ import annotations

from .settings import COMPONENT_SECTIONS, ConfigError, DeploymentConfig

IMAGE_BACKEND = "sentimarket:latest"
IMAGE_DASHBOARD = "sentimarket-dashboard:latest"

STORE_MOUNT_PATH = "/data"
SECRETS_MOUNT_DIR = "/run/secrets"

_COMMANDS = {
    "backend": "sentimarket serve-backend --listen {listen} --data-dir /data "
               "--keys-dir /run/secrets",
    "sentiment": "sentimarket serve-sentiment --listen {listen}",
    "reddit_crawler": "sentimarket crawl-reddit --backend-url {backend_url} "
                      "--secrets-dir /run/secrets --live",
    "market_crawler": "sentimarket crawl-market --backend-url {backend_url} "
                      "--secrets-dir /run/secrets --live",
}

_DEPENDS_ON = {
    "backend": ("sentiment",),
    "reddit_crawler": ("backend",),
    "market_crawler": ("backend",),
    "dashboard": ("backend",),
}


def _service_name(component: str) -> str:
    return component.replace("_", "-")


def emit_orchestration_manifest(config: DeploymentConfig) -> str:
    """Render the manifest; a pure, deterministic function of the config."""
    all_secret_names: list[str] = []
    for section in COMPONENT_SECTIONS:
        for name in config.components[section].secret_names:
            if name not in all_secret_names:
                all_secret_names.append(name)

    service_names = [_service_name(s) for s in COMPONENT_SECTIONS]
    if len(set(service_names)) != len(service_names):
        raise ConfigError("duplicate service names")

    lines: list[str] = ["services:"]
    for section in COMPONENT_SECTIONS:
        component = config.components[section]
        service = _service_name(section)
        lines.append(f"  {service}:")
        image = IMAGE_DASHBOARD if section == "dashboard" else IMAGE_BACKEND
        lines.append(f"    image: {image}")
        if section in _COMMANDS:
            command = _COMMANDS[section].format(
                listen=component.listen or "0.0.0.0:80",
                backend_url=component.backend_url or "http://backend:8080",
            )
            lines.append(f"    command: {command}")
        if section == "backend":
            lines.append("    environment:")
            lines.append(f"      PRODUCTION: \"{'true' if component.production else 'false'}\"")
            lines.append("    volumes:")
            lines.append(f"      - {config.store_volume}:{STORE_MOUNT_PATH}")
        if component.listen:
            port = component.listen.rsplit(":", 1)[-1]
            lines.append("    ports:")
            lines.append(f'      - "{port}:{port}"')
        if component.secret_names:
            unknown = [n for n in component.secret_names if n not in all_secret_names]
            if unknown:  # unreachable by construction, kept as a guard
                raise ConfigError(f"{section}: unknown secrets {unknown}")
            lines.append("    secrets:")
            for name in component.secret_names:
                lines.append(f"      - {name}")
        depends = _DEPENDS_ON.get(section, ())
        if depends:
            lines.append("    depends_on:")
            for dep in depends:
                lines.append(f"      - {dep}")

    lines.append("volumes:")
    lines.append(f"  {config.store_volume}: {{}}")

    if all_secret_names:
        lines.append("secrets:")
        for name in all_secret_names:
            secret_path = config.secrets_dir / name
            if not secret_path.is_file():
                raise ConfigError(f"secret file for {name!r} not found in "
                                  f"{config.secrets_dir}")
            lines.append(f"  {name}:")
            lines.append(f"    file: {config.secrets_dir.as_posix()}/{name}")

    return "\n".join(lines) + "\n"
