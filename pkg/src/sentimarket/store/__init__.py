from .models import CommentDoc, DocumentError, SentimentBucket, StockBar
from .naming import (
    index_for_stock,
    index_for_subreddit,
    is_valid_index_name,
    stock_doc_id,
)
from .store import DocumentStore, QueryError

__all__ = [
    "CommentDoc",
    "DocumentError",
    "SentimentBucket",
    "StockBar",
    "index_for_stock",
    "index_for_subreddit",
    "is_valid_index_name",
    "stock_doc_id",
    "DocumentStore",
    "QueryError",
]
