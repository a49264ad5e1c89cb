"""Access-key authentication for the GraphQL API.

Each component owns one opaque key bound to a role; the key rides in the
``X-Access-Key`` header and is checked on every mutation. Comparison is
constant-time and never short-circuits across roles.
"""

from __future__ import annotations

import hmac
from dataclasses import dataclass

ACCESS_KEY_HEADER = "X-Access-Key"

ROLE_REDDIT_CRAWLER = "reddit_crawler"
ROLE_MARKET_CRAWLER = "market_crawler"
ROLE_ADMIN = "admin"
ROLES = (ROLE_REDDIT_CRAWLER, ROLE_MARKET_CRAWLER, ROLE_ADMIN)

MIN_KEY_LENGTH = 16


class AccessKeyError(ValueError):
    """Raised for malformed or conflicting key material."""


@dataclass(frozen=True)
class AccessKey:
    key: str
    role: str

    def __repr__(self) -> str:  # never leak key material into logs
        return f"AccessKey(role={self.role!r})"


class KeyRing:
    """All component keys known to the backend."""

    def __init__(self, keys_by_role: dict[str, str]):
        missing = set(ROLES) - set(keys_by_role)
        if missing:
            raise AccessKeyError(f"missing access keys for roles: {sorted(missing)}")
        values = list(keys_by_role.values())
        if len(set(values)) != len(values):
            raise AccessKeyError("access keys must be unique across roles")
        for role, key in keys_by_role.items():
            if len(key.encode("utf-8")) < MIN_KEY_LENGTH:
                raise AccessKeyError(f"access key for role {role!r} is shorter than "
                                     f"{MIN_KEY_LENGTH} bytes")
        self._keys = dict(keys_by_role)

    def role_for(self, candidate: str | None) -> str | None:
        """Map a presented key to its role; None when missing or unknown."""
        if candidate is None:
            return None
        matched: str | None = None
        for role in ROLES:  # fixed iteration order, no early exit
            if hmac.compare_digest(self._keys[role].encode("utf-8"),
                                   candidate.encode("utf-8")):
                matched = role
        return matched

    def key_for(self, role: str) -> str:
        return self._keys[role]
