"""Token authentication with per-user region scoping.

Tokens are static per-user secrets; only their SHA-256 digests are kept, and
lookup compares digests in constant time.
"""

from __future__ import annotations

import enum
import hashlib
import hmac
from dataclasses import dataclass

from ..errors import AuthError


class Role(enum.Enum):
    OFFICER = "Officer"
    ADMIN = "Admin"


@dataclass(frozen=True)
class UserProfile:
    user_id: str
    display_name: str
    role: Role
    region_scopes: tuple[str, ...]
    token_digest: str

    @property
    def sees_all_regions(self) -> bool:
        return self.role is Role.ADMIN

    def can_see_region(self, region: str) -> bool:
        return self.sees_all_regions or region in self.region_scopes

    def to_json_dict(self) -> dict:
        return {
            "user_id": self.user_id,
            "display_name": self.display_name,
            "role": self.role.value,
            "region_scopes": list(self.region_scopes),
            "token_digest": self.token_digest,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "UserProfile":
        return cls(
            user_id=obj["user_id"],
            display_name=obj["display_name"],
            role=Role(obj["role"]),
            region_scopes=tuple(obj["region_scopes"]),
            token_digest=obj["token_digest"],
        )


def hash_token(token: str) -> str:
    return hashlib.sha256(token.encode("utf-8")).hexdigest()


def make_user(
    user_id: str,
    display_name: str,
    role: str | Role,
    region_scopes,
    token: str,
) -> UserProfile:
    if not user_id:
        raise ValueError("user_id must be non-empty")
    if not token:
        raise ValueError("token must be non-empty")
    return UserProfile(
        user_id=user_id,
        display_name=display_name or user_id,
        role=Role(role) if isinstance(role, str) else role,
        region_scopes=tuple(region_scopes),
        token_digest=hash_token(token),
    )


def authenticate(users, bearer_token: str) -> UserProfile:
    """Match a presented token against known users by digest comparison."""
    if not bearer_token:
        raise AuthError("missing bearer token")
    digest = hash_token(bearer_token)
    matched = None
    for user in users:
        # compare every user to keep timing independent of match position
        if hmac.compare_digest(digest, user.token_digest):
            matched = user
    if matched is None:
        raise AuthError("unknown or invalid token")
    return matched
