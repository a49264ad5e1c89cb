"""File-based secrets: one value per file, mounted into each component.

Secret values must never reach logs, serialized output, or error
messages; errors name the secret, not its content. A logging filter is
provided as a second line of defense for anything that slips through.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from ..backend.auth import ROLES, AccessKeyError, KeyRing

DEFAULT_SECRETS_DIR = Path("./secrets")

KEY_FILE_PREFIX = "key_"


class SecretError(RuntimeError):
    """Startup-time secret problems; messages carry names only."""


@dataclass(frozen=True)
class SecretRef:
    """A loaded secret. The value stays out of repr/str on purpose."""

    name: str
    mount_path: Path
    value: str

    def __repr__(self) -> str:
        return f"SecretRef(name={self.name!r})"

    __str__ = __repr__


def load_secret(name: str, directory: str | Path = DEFAULT_SECRETS_DIR) -> SecretRef:
    """Read `<directory>/<name>`, trimming the trailing newline."""
    path = Path(directory) / name
    if not path.is_file():
        raise SecretError(f"missing secret {name!r}")
    raw = path.read_text(encoding="utf-8")
    value = raw[:-2] if raw.endswith("\r\n") else raw[:-1] if raw.endswith("\n") else raw
    if value == "":
        raise SecretError(f"secret {name!r} is empty")
    return SecretRef(name=name, mount_path=path, value=value)


def role_key_file(role: str) -> str:
    return KEY_FILE_PREFIX + role


def load_access_keys(directory: str | Path = DEFAULT_SECRETS_DIR) -> dict[str, str]:
    """Load the per-role key files; all roles required, values unique."""
    keys = {}
    for role in ROLES:
        keys[role] = load_secret(role_key_file(role), directory).value
    if len(set(keys.values())) != len(keys):
        raise SecretError("access keys must be unique across roles")
    return keys


def load_keyring(directory: str | Path = DEFAULT_SECRETS_DIR) -> KeyRing:
    try:
        return KeyRing(load_access_keys(directory))
    except AccessKeyError as exc:
        raise SecretError(str(exc)) from None


class SecretRedactingFilter(logging.Filter):
    """Replaces registered secret values in log records with [redacted]."""

    def __init__(self, values: list[str]):
        super().__init__()
        self._values = [v for v in values if v]

    def filter(self, record: logging.LogRecord) -> bool:
        message = record.getMessage()
        hit = False
        for value in self._values:
            if value in message:
                message = message.replace(value, "[redacted]")
                hit = True
        if hit:
            record.msg = message
            record.args = ()
        return True


def install_redaction(values: list[str]) -> None:
    logging.getLogger().addFilter(SecretRedactingFilter(values))
