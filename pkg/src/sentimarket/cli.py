"""Command-line entry points for every component."""

from __future__ import annotations

import logging
import os

import click

from .backend.app import run_backend
from .backend.client import BackendClient
from .backend.services import (
    PRODUCTION_ENV_VAR,
    StartupError,
    parse_production_flag,
    select_services,
)
from .config.manifest import emit_orchestration_manifest
from .config.secrets import (
    SecretError,
    install_redaction,
    load_access_keys,
    load_keyring,
    load_secret,
    role_key_file,
)
from .config.settings import ConfigError, check_config, parse_deployment_config
from .crawlers.clock import SystemClock
from .crawlers.market import (
    DEFAULT_POLL_INTERVAL as MARKET_INTERVAL,
    FixtureMarketProvider,
    MarketCrawler,
    WatermarkStore,
    YahooFinanceProvider,
)
from .crawlers.ratelimit import RateBudget
from .crawlers.reddit import (
    DEFAULT_POLL_INTERVAL as REDDIT_INTERVAL,
    CursorStore,
    FixtureCommentSource,
    LiveRedditSource,
    RedditCrawler,
)
from .sentiment.lexicon import LexiconError, load_default_lexicon, load_lexicon
from .sentiment.service import run_sentiment_service

logger = logging.getLogger(__name__)


def _parse_listen(listen: str) -> tuple[str, int]:
    host, _, port = listen.rpartition(":")
    if not host or not port.isdigit():
        raise click.BadParameter(f"expected HOST:PORT, got {listen!r}")
    return host, int(port)


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


@click.group()
@click.option("--verbose", is_flag=True, help="Enable debug logging.")
def main(verbose: bool) -> None:
    """Subreddit sentiment vs. stock price platform."""
    _setup_logging(verbose)


@main.command("serve-backend")
@click.option("--listen", default="127.0.0.1:8080", show_default=True)
@click.option("--data-dir", type=click.Path(), default="./data", show_default=True,
              help="Store and tracking state directory (production mode).")
@click.option("--keys-dir", type=click.Path(), default="./secrets", show_default=True,
              help="Directory containing the key_<role> secret files.")
@click.option("--lexicon", "lexicon_path", type=click.Path(), default=None,
              help="Lexicon file; defaults to the bundled one.")
@click.option("--sentiment-url", default=None,
              help="Score via a remote sentiment endpoint instead of in-process.")
def serve_backend_cmd(listen: str, data_dir: str, keys_dir: str,
                      lexicon_path: str | None, sentiment_url: str | None) -> None:
    """Run the GraphQL backend (mode from the PRODUCTION env var)."""
    host, port = _parse_listen(listen)
    try:
        production = parse_production_flag(os.environ.get(PRODUCTION_ENV_VAR))
        keyring = load_keyring(keys_dir)
        install_redaction([keyring.key_for(role) for role in
                           ("reddit_crawler", "market_crawler", "admin")])
        services = select_services(
            production=production,
            data_dir=data_dir,
            lexicon_path=lexicon_path,
            sentiment_url=sentiment_url,
        )
    except (StartupError, SecretError, LexiconError) as exc:
        raise SystemExit(f"startup failure: {exc}")
    run_backend(host, port, services, keyring)


@main.command("serve-sentiment")
@click.option("--listen", default="127.0.0.1:8081", show_default=True)
@click.option("--lexicon", "lexicon_path", type=click.Path(), default=None)
def serve_sentiment_cmd(listen: str, lexicon_path: str | None) -> None:
    """Run the sentiment REST endpoint."""
    host, port = _parse_listen(listen)
    try:
        lexicon = load_lexicon(lexicon_path) if lexicon_path else load_default_lexicon()
    except LexiconError as exc:
        raise SystemExit(f"startup failure: {exc}")
    run_sentiment_service(host, port, lexicon)


@main.command("crawl-reddit")
@click.option("--backend-url", default="http://127.0.0.1:8080", show_default=True)
@click.option("--interval", type=float, default=REDDIT_INTERVAL, show_default=True)
@click.option("--fixture", type=click.Path(), default=None,
              help="JSON-lines fixture file serving as the comment source.")
@click.option("--live", is_flag=True, help="Use the real comment API (needs secrets).")
@click.option("--secrets-dir", type=click.Path(), default="./secrets", show_default=True)
@click.option("--state-file", type=click.Path(), default="./reddit_cursors.json",
              show_default=True)
@click.option("--max-cycles", type=int, default=None, help="Stop after N cycles.")
def crawl_reddit_cmd(backend_url: str, interval: float, fixture: str | None,
                     live: bool, secrets_dir: str, state_file: str,
                     max_cycles: int | None) -> None:
    """Run the comment crawler loop."""
    if live == (fixture is not None):
        raise SystemExit("choose exactly one of --fixture PATH or --live")
    try:
        key = load_secret(role_key_file("reddit_crawler"), secrets_dir)
        if live:
            source = LiveRedditSource(
                client_id=load_secret("reddit_client_id", secrets_dir).value,
                client_secret=load_secret("reddit_client_secret", secrets_dir).value,
                username=load_secret("reddit_username", secrets_dir).value,
                password=load_secret("reddit_password", secrets_dir).value,
            )
        else:
            source = FixtureCommentSource(fixture)
    except SecretError as exc:
        raise SystemExit(f"startup failure: {exc}")
    install_redaction([key.value])
    clock = SystemClock()
    crawler = RedditCrawler(
        client=BackendClient(backend_url, access_key=key.value),
        source=source,
        budget=RateBudget(clock),
        cursors=CursorStore(state_file),
        clock=clock,
    )
    crawler.run_forever(interval=interval, max_cycles=max_cycles)


@main.command("crawl-market")
@click.option("--backend-url", default="http://127.0.0.1:8080", show_default=True)
@click.option("--interval", type=float, default=MARKET_INTERVAL, show_default=True)
@click.option("--fixture-dir", type=click.Path(), default=None,
              help="Directory of <TICKER>.csv files serving as the provider.")
@click.option("--live", is_flag=True, help="Use the public chart API.")
@click.option("--secrets-dir", type=click.Path(), default="./secrets", show_default=True)
@click.option("--state-file", type=click.Path(), default="./market_watermarks.json",
              show_default=True)
@click.option("--max-cycles", type=int, default=None)
def crawl_market_cmd(backend_url: str, interval: float, fixture_dir: str | None,
                     live: bool, secrets_dir: str, state_file: str,
                     max_cycles: int | None) -> None:
    """Run the market-data crawler loop."""
    if live == (fixture_dir is not None):
        raise SystemExit("choose exactly one of --fixture-dir PATH or --live")
    try:
        key = load_secret(role_key_file("market_crawler"), secrets_dir)
    except SecretError as exc:
        raise SystemExit(f"startup failure: {exc}")
    install_redaction([key.value])
    provider = YahooFinanceProvider() if live else FixtureMarketProvider(fixture_dir)
    crawler = MarketCrawler(
        client=BackendClient(backend_url, access_key=key.value),
        provider=provider,
        watermarks=WatermarkStore(state_file),
        clock=SystemClock(),
    )
    crawler.run_forever(interval=interval, max_cycles=max_cycles)


@main.command("emit-manifest")
@click.option("--config", "config_path", type=click.Path(), required=True)
@click.option("-o", "--output", type=click.File("w"), default="-",
              help="Output file; stdout by default.")
def emit_manifest_cmd(config_path: str, output) -> None:
    """Generate the container-orchestration manifest."""
    try:
        deployment = parse_deployment_config(config_path)
        output.write(emit_orchestration_manifest(deployment))
    except ConfigError as exc:
        raise SystemExit(f"config error: {exc}")


@main.command("check-config")
@click.option("--config", "config_path", type=click.Path(), required=True)
def check_config_cmd(config_path: str) -> None:
    """Validate a deployment config, including secret resolution."""
    try:
        deployment = parse_deployment_config(config_path)
    except ConfigError as exc:
        raise SystemExit(f"config error: {exc}")
    problems = check_config(deployment)
    if problems:
        for problem in problems:
            click.echo(f"FAIL {problem}", err=True)
        raise SystemExit(1)
    click.echo("config ok")


@main.command("check-keys")
@click.option("--secrets-dir", type=click.Path(), default="./secrets", show_default=True)
def check_keys_cmd(secrets_dir: str) -> None:
    """Verify the three role key files load and are distinct."""
    try:
        load_access_keys(secrets_dir)
    except SecretError as exc:
        raise SystemExit(f"FAIL {exc}")
    click.echo("keys ok")


if __name__ == "__main__":
    main()
