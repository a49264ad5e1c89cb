import logging
import shutil
from pathlib import Path

import pytest
import yaml

from conftest import TEST_KEYS, write_key_files
from sentimarket.backend.auth import AccessKeyError, KeyRing
from sentimarket.config.manifest import emit_orchestration_manifest
from sentimarket.config.secrets import (
    SecretError,
    SecretRedactingFilter,
    load_access_keys,
    load_keyring,
    load_secret,
)
from sentimarket.config.settings import (
    COMPONENT_SECTIONS,
    ConfigError,
    check_config,
    parse_deployment_config,
)

REPO_ROOT = Path(__file__).resolve().parent.parent
EXAMPLE_CONFIG = REPO_ROOT / "deploy" / "deployment.ini"
GOLDEN_MANIFEST = Path(__file__).parent / "data" / "manifest_golden.yaml"

EXAMPLE_SECRET_NAMES = [
    "key_reddit_crawler", "key_market_crawler", "key_admin",
    "reddit_client_id", "reddit_client_secret", "reddit_username", "reddit_password",
]


def populate_secrets(directory: Path, names=EXAMPLE_SECRET_NAMES) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for i, name in enumerate(names):
        (directory / name).write_text(f"secret-value-{i:02d}-{name}\n", encoding="utf-8")


@pytest.fixture()
def deployment(tmp_path, monkeypatch):
    """Example config parsed from a tmp working dir with secrets present."""
    shutil.copy(EXAMPLE_CONFIG, tmp_path / "deployment.ini")
    populate_secrets(tmp_path / "secrets")
    monkeypatch.chdir(tmp_path)
    return parse_deployment_config("deployment.ini")


class TestSecrets:
    def test_trailing_newline_trimmed(self, tmp_path):
        (tmp_path / "token").write_text("abc123\n", encoding="utf-8")
        assert load_secret("token", tmp_path).value == "abc123"

    def test_crlf_trimmed(self, tmp_path):
        (tmp_path / "token").write_bytes(b"abc123\r\n")
        assert load_secret("token", tmp_path).value == "abc123"

    def test_no_trailing_newline_ok(self, tmp_path):
        (tmp_path / "token").write_text("abc123", encoding="utf-8")
        assert load_secret("token", tmp_path).value == "abc123"

    def test_missing_file_error_names_secret_not_value(self, tmp_path):
        with pytest.raises(SecretError, match="reddit_client_secret"):
            load_secret("reddit_client_secret", tmp_path)

    def test_empty_secret_rejected(self, tmp_path):
        (tmp_path / "token").write_text("\n", encoding="utf-8")
        with pytest.raises(SecretError, match="empty"):
            load_secret("token", tmp_path)

    def test_repr_hides_value(self, tmp_path):
        (tmp_path / "token").write_text("swordfish\n", encoding="utf-8")
        ref = load_secret("token", tmp_path)
        assert "swordfish" not in repr(ref)
        assert "swordfish" not in str(ref)


class TestAccessKeys:
    def test_three_distinct_files_load(self, tmp_path):
        write_key_files(tmp_path)
        keys = load_access_keys(tmp_path)
        assert set(keys) == {"reddit_crawler", "market_crawler", "admin"}

    def test_missing_role_file_fails(self, tmp_path):
        write_key_files(tmp_path)
        (tmp_path / "key_admin").unlink()
        with pytest.raises(SecretError, match="key_admin"):
            load_access_keys(tmp_path)

    def test_duplicate_values_fail(self, tmp_path):
        write_key_files(tmp_path, {
            "reddit_crawler": "same-key-same-key-1",
            "market_crawler": "same-key-same-key-1",
            "admin": "different-key-00001",
        })
        with pytest.raises(SecretError, match="unique"):
            load_access_keys(tmp_path)

    def test_short_key_rejected_by_keyring(self, tmp_path):
        write_key_files(tmp_path, {**TEST_KEYS, "admin": "short"})
        with pytest.raises(SecretError, match="16"):
            load_keyring(tmp_path)

    def test_keyring_constant_time_lookup(self):
        ring = KeyRing(dict(TEST_KEYS))
        assert ring.role_for(TEST_KEYS["admin"]) == "admin"
        assert ring.role_for("unknown-key-unknown") is None
        assert ring.role_for(None) is None

    def test_keyring_requires_all_roles(self):
        with pytest.raises(AccessKeyError):
            KeyRing({"admin": "x" * 20})


class TestDeploymentConfig:
    def test_example_config_parses(self, deployment):
        assert set(deployment.components) == set(COMPONENT_SECTIONS)
        assert deployment.component("backend").production is True
        assert deployment.component("reddit_crawler").backend_url == "http://backend:8080"
        assert "key_admin" in deployment.component("backend").secret_names

    def test_missing_section_rejected(self, tmp_path):
        (tmp_path / "broken.ini").write_text("[deployment]\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="component section"):
            parse_deployment_config(tmp_path / "broken.ini")

    def test_missing_file_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            parse_deployment_config(tmp_path / "ghost.ini")

    def test_check_config_passes_with_secrets(self, deployment):
        assert check_config(deployment) == []

    def test_check_config_reports_missing_secret(self, deployment, tmp_path):
        (tmp_path / "secrets" / "key_admin").unlink()
        problems = check_config(deployment)
        assert any("key_admin" in p for p in problems)

    def test_check_config_reports_empty_secret(self, deployment, tmp_path):
        (tmp_path / "secrets" / "key_admin").write_text("\n", encoding="utf-8")
        problems = check_config(deployment)
        assert any("empty" in p for p in problems)


class TestManifest:
    def test_matches_committed_golden(self, deployment):
        assert emit_orchestration_manifest(deployment) == GOLDEN_MANIFEST.read_text("utf-8")

    def test_deterministic(self, deployment):
        first = emit_orchestration_manifest(deployment)
        second = emit_orchestration_manifest(deployment)
        assert first == second

    def test_exactly_five_services(self, deployment):
        doc = yaml.safe_load(emit_orchestration_manifest(deployment))
        assert len(doc["services"]) == 5
        assert set(doc["services"]) == {
            "backend", "sentiment", "reddit-crawler", "market-crawler", "dashboard"}

    def test_startup_ordering_and_volume(self, deployment):
        doc = yaml.safe_load(emit_orchestration_manifest(deployment))
        assert doc["services"]["backend"]["volumes"] == ["store-data:/data"]
        assert "store-data" in doc["volumes"]
        assert doc["services"]["reddit-crawler"]["depends_on"] == ["backend"]
        assert doc["services"]["market-crawler"]["depends_on"] == ["backend"]
        assert doc["services"]["dashboard"]["depends_on"] == ["backend"]
        assert doc["services"]["backend"]["depends_on"] == ["sentiment"]

    def test_secret_mounts_declared(self, deployment):
        doc = yaml.safe_load(emit_orchestration_manifest(deployment))
        assert doc["services"]["backend"]["secrets"] == [
            "key_reddit_crawler", "key_market_crawler", "key_admin"]
        assert doc["secrets"]["key_admin"]["file"] == "secrets/key_admin"

    def test_service_name_networking(self, deployment):
        text = emit_orchestration_manifest(deployment)
        assert "--backend-url http://backend:8080" in text

    def test_dangling_secret_reference_rejected(self, deployment, tmp_path):
        (tmp_path / "secrets" / "reddit_client_id").unlink()
        with pytest.raises(ConfigError, match="reddit_client_id"):
            emit_orchestration_manifest(deployment)

    def test_no_secret_values_in_manifest(self, deployment, tmp_path):
        manifest = emit_orchestration_manifest(deployment)
        for secret_file in (tmp_path / "secrets").iterdir():
            assert secret_file.read_text("utf-8").strip() not in manifest


class TestRedactionFilter:
    def test_filter_scrubs_values(self, caplog):
        logger = logging.getLogger("redaction-probe")
        logger.addFilter(SecretRedactingFilter(["hunter2"]))
        with caplog.at_level(logging.INFO, logger="redaction-probe"):
            logger.info("the password is hunter2 ok")
        logger.filters.clear()
        assert "hunter2" not in caplog.text
        assert "[redacted]" in caplog.text
