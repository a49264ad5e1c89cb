"""GraphQL schema: queries are public, mutations are key-gated.

Crawlers deliver raw data through mutations; the dashboard reads
aggregated series through queries. Comments get their sentiment score at
ingest, before hitting the store.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..store.models import CommentDoc, DocumentError, StockBar
from ..store.store import QueryError
from .auth import ROLE_ADMIN, ROLE_MARKET_CRAWLER, ROLE_REDDIT_CRAWLER
from .graphql_lite import (
    BOOLEAN,
    FLOAT,
    INT,
    STRING,
    Argument,
    Field,
    GraphQLError,
    InputField,
    InputObjectType,
    ListType,
    NonNull,
    ObjectType,
    Schema,
)
from .services import Services

logger = logging.getLogger(__name__)

# Which roles may call each mutation; None means any authenticated role.
MUTATION_ROLE_POLICY: dict[str, frozenset[str] | None] = {
    "trackSubreddit": None,
    "trackTicker": None,
    "submitComments": frozenset({ROLE_REDDIT_CRAWLER, ROLE_ADMIN}),
    "submitStockBars": frozenset({ROLE_MARKET_CRAWLER, ROLE_ADMIN}),
}


@dataclass
class GraphQLContext:
    services: Services
    role: str | None


def _require_role(context: GraphQLContext, mutation_name: str) -> None:
    if context.role is None:
        raise GraphQLError("a valid access key is required for mutations",
                           code="UNAUTHENTICATED")
    allowed = MUTATION_ROLE_POLICY[mutation_name]
    if allowed is not None and context.role not in allowed:
        raise GraphQLError(f"role {context.role!r} may not call {mutation_name}",
                           code="FORBIDDEN")


# --- query resolvers ----------------------------------------------------


def _resolve_tracked_subreddits(context: GraphQLContext, args: dict) -> list[str]:
    return context.services.tracked.subreddits()


def _resolve_tracked_tickers(context: GraphQLContext, args: dict) -> list[str]:
    return context.services.tracked.tickers()


def _resolve_sentiment_series(context: GraphQLContext, args: dict) -> list[dict]:
    try:
        buckets = context.services.store.aggregate_sentiment(
            subreddit=args["subreddit"],
            keywords=args["keywords"] or [],
            bucket_width=args["bucketWidth"],
            t_from=args["from"],
            t_to=args["to"],
        )
    except (QueryError, ValueError) as exc:
        raise GraphQLError(str(exc), code="BAD_USER_INPUT") from None
    return [b.to_json_dict() for b in buckets]


def _resolve_stock_series(context: GraphQLContext, args: dict) -> list[dict]:
    try:
        bars = context.services.store.stock_series(
            ticker=args["ticker"], t_from=args["from"], t_to=args["to"])
    except (QueryError, ValueError) as exc:
        raise GraphQLError(str(exc), code="BAD_USER_INPUT") from None
    return [b.to_json_dict() for b in bars]


# --- mutation resolvers -------------------------------------------------


def _resolve_track_subreddit(context: GraphQLContext, args: dict) -> bool:
    _require_role(context, "trackSubreddit")
    try:
        return context.services.tracked.add_subreddit(args["name"])
    except ValueError as exc:
        raise GraphQLError(str(exc), code="BAD_USER_INPUT") from None


def _resolve_track_ticker(context: GraphQLContext, args: dict) -> bool:
    _require_role(context, "trackTicker")
    try:
        return context.services.tracked.add_ticker(args["symbol"])
    except ValueError as exc:
        raise GraphQLError(str(exc), code="BAD_USER_INPUT") from None


def _resolve_submit_comments(context: GraphQLContext, args: dict) -> dict:
    _require_role(context, "submitComments")
    services = context.services
    accepted = rejected = 0
    for raw in args["comments"]:
        sentiment = services.scorer.score(raw["text"])
        try:
            doc = CommentDoc(
                subreddit=raw["subreddit"],
                text=raw["text"],
                timestamp=raw["timestamp"],
                commentId=raw["commentId"],
                userId=raw["userId"],
                articleId=raw["articleId"],
                upvotes=raw["upvotes"],
                downvotes=raw["downvotes"],
                sentiment=sentiment,
            )
            services.store.upsert_comment(doc)
        except (DocumentError, ValueError) as exc:
            logger.warning("rejected comment %r: %s", raw.get("commentId"), exc)
            rejected += 1
            continue
        accepted += 1
    return {"accepted": accepted, "rejected": rejected}


def _resolve_submit_stock_bars(context: GraphQLContext, args: dict) -> dict:
    _require_role(context, "submitStockBars")
    services = context.services
    accepted = rejected = 0
    for raw in args["bars"]:
        try:
            bar = StockBar(
                stock=raw["stock"],
                timestamp=raw["timestamp"],
                open=raw["open"],
                high=raw["high"],
                low=raw["low"],
                close=raw["close"],
                volume=raw["volume"],
            )
            services.store.upsert_stock(bar)
        except (DocumentError, ValueError) as exc:
            logger.warning("rejected bar %r@%r: %s", raw.get("stock"), raw.get("timestamp"), exc)
            rejected += 1
            continue
        accepted += 1
    return {"accepted": accepted, "rejected": rejected}


# --- schema assembly ----------------------------------------------------


COMMENT_INPUT = InputObjectType("CommentInput", {
    "subreddit": InputField(NonNull(STRING)),
    "text": InputField(NonNull(STRING)),
    "timestamp": InputField(NonNull(INT)),
    "commentId": InputField(NonNull(STRING)),
    "userId": InputField(NonNull(STRING)),
    "articleId": InputField(NonNull(STRING)),
    "upvotes": InputField(NonNull(INT)),
    "downvotes": InputField(NonNull(INT)),
})

STOCK_BAR_INPUT = InputObjectType("StockBarInput", {
    "stock": InputField(NonNull(STRING)),
    "timestamp": InputField(NonNull(INT)),
    "open": InputField(NonNull(FLOAT)),
    "high": InputField(NonNull(FLOAT)),
    "low": InputField(NonNull(FLOAT)),
    "close": InputField(NonNull(FLOAT)),
    "volume": InputField(NonNull(INT)),
})

SENTIMENT_BUCKET_TYPE = ObjectType("SentimentBucket", {
    "bucketStart": Field(NonNull(INT)),
    "mentionCount": Field(NonNull(INT)),
    "meanSentiment": Field(NonNull(FLOAT)),
    "positiveCount": Field(NonNull(INT)),
    "neutralCount": Field(NonNull(INT)),
    "negativeCount": Field(NonNull(INT)),
})

STOCK_BAR_TYPE = ObjectType("StockBar", {
    "stock": Field(NonNull(STRING)),
    "timestamp": Field(NonNull(INT)),
    "open": Field(NonNull(FLOAT)),
    "high": Field(NonNull(FLOAT)),
    "low": Field(NonNull(FLOAT)),
    "close": Field(NonNull(FLOAT)),
    "volume": Field(NonNull(INT)),
})

SUBMIT_RESULT_TYPE = ObjectType("SubmitResult", {
    "accepted": Field(NonNull(INT)),
    "rejected": Field(NonNull(INT)),
})

QUERY_TYPE = ObjectType("Query", {
    "trackedSubreddits": Field(NonNull(ListType(NonNull(STRING))),
                               resolver=_resolve_tracked_subreddits),
    "trackedTickers": Field(NonNull(ListType(NonNull(STRING))),
                            resolver=_resolve_tracked_tickers),
    "sentimentSeries": Field(
        NonNull(ListType(NonNull(SENTIMENT_BUCKET_TYPE))),
        args={
            "subreddit": Argument(NonNull(STRING)),
            "keywords": Argument(NonNull(ListType(NonNull(STRING))),
                                 default=[], has_default=True),
            "bucketWidth": Argument(NonNull(INT)),
            "from": Argument(NonNull(INT)),
            "to": Argument(NonNull(INT)),
        },
        resolver=_resolve_sentiment_series,
    ),
    "stockSeries": Field(
        NonNull(ListType(NonNull(STOCK_BAR_TYPE))),
        args={
            "ticker": Argument(NonNull(STRING)),
            "from": Argument(NonNull(INT)),
            "to": Argument(NonNull(INT)),
        },
        resolver=_resolve_stock_series,
    ),
})

MUTATION_TYPE = ObjectType("Mutation", {
    "trackSubreddit": Field(NonNull(BOOLEAN),
                            args={"name": Argument(NonNull(STRING))},
                            resolver=_resolve_track_subreddit),
    "trackTicker": Field(NonNull(BOOLEAN),
                         args={"symbol": Argument(NonNull(STRING))},
                         resolver=_resolve_track_ticker),
    "submitComments": Field(NonNull(SUBMIT_RESULT_TYPE),
                            args={"comments": Argument(NonNull(ListType(NonNull(COMMENT_INPUT))))},
                            resolver=_resolve_submit_comments),
    "submitStockBars": Field(NonNull(SUBMIT_RESULT_TYPE),
                             args={"bars": Argument(NonNull(ListType(NonNull(STOCK_BAR_INPUT))))},
                             resolver=_resolve_submit_stock_bars),
})

SCHEMA = Schema(
    query=QUERY_TYPE,
    mutation=MUTATION_TYPE,
    input_types=(COMMENT_INPUT, STOCK_BAR_INPUT),
    object_types=(SENTIMENT_BUCKET_TYPE, STOCK_BAR_TYPE, SUBMIT_RESULT_TYPE),
)
