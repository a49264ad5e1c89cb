from .manifest import emit_orchestration_manifest
from .secrets import (
    SecretError,
    SecretRedactingFilter,
    SecretRef,
    install_redaction,
    load_access_keys,
    load_keyring,
    load_secret,
)
from .settings import (
    ComponentConfig,
    ConfigError,
    DeploymentConfig,
    check_config,
    parse_deployment_config,
)

__all__ = [
    "emit_orchestration_manifest",
    "SecretError",
    "SecretRedactingFilter",
    "SecretRef",
    "install_redaction",
    "load_access_keys",
    "load_keyring",
    "load_secret",
    "ComponentConfig",
    "ConfigError",
    "DeploymentConfig",
    "check_config",
    "parse_deployment_config",
]
