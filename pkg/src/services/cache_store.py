# src/services/cache_store.py
from __future__ import annotations

import hashlib
import json
import logging
import time
from contextlib import contextmanager
from typing import Any, Callable, Dict, Iterator, Optional

from src.db import get_conn, get_settings

logger = logging.getLogger(__name__)


def params_digest(params: Dict[str, Any]) -> str:
    blob = json.dumps(params, sort_keys=True, ensure_ascii=False, default=str)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def report_key(name: str, params: Dict[str, Any]) -> str:
    return f"report:{name}:{params_digest(params)}"


@contextmanager
def _cache_conn() -> Iterator[Any]:
    conn = get_conn()
    try:
        yield conn
        conn.commit()
    finally:
        conn.close()


def cache_get(key: str) -> Optional[Any]:
    with _cache_conn() as conn:
        row = conn.execute("SELECT value_json, expires_at FROM kv_cache WHERE key = ?", (key,)).fetchone()
    if row is None:
        return None
    if row["expires_at"] is not None and time.time() >= int(row["expires_at"]):
        cache_delete(key)
        return None
    try:
        return json.loads(row["value_json"])
    except json.JSONDecodeError:
        logger.warning("dropping unreadable cache entry %s", key)
        cache_delete(key)
        return None


def cache_set(key: str, value: Any, ttl_seconds: Optional[int] = None) -> None:
    """ttl_seconds None = no expira."""
    now = int(time.time())
    expires = now + int(ttl_seconds) if ttl_seconds is not None else None
    blob = json.dumps(value, ensure_ascii=False, sort_keys=True)
    with _cache_conn() as conn:
        conn.execute(
            "INSERT OR REPLACE INTO kv_cache(key, value_json, created_at, expires_at) VALUES (?, ?, ?, ?)",
            (key, blob, now, expires),
        )


def cache_delete(key: str) -> None:
    with _cache_conn() as conn:
        conn.execute("DELETE FROM kv_cache WHERE key = ?", (key,))


def cache_clear(prefix: Optional[str] = None) -> int:
    with _cache_conn() as conn:
        if prefix:
            cur = conn.execute("DELETE FROM kv_cache WHERE key LIKE ?", (f"{prefix}%",))
        else:
            cur = conn.execute("DELETE FROM kv_cache")
        return int(cur.rowcount)


def purge_expired() -> int:
    with _cache_conn() as conn:
        cur = conn.execute(
            "DELETE FROM kv_cache WHERE expires_at IS NOT NULL AND expires_at <= ?",
            (int(time.time()),),
        )
        return int(cur.rowcount)


def cache_get_or_set(key: str, fn: Callable[[], Any], ttl: Optional[int] = None) -> Any:
    """ttl None = Z2LAB_CACHE_TTL; ttl 0 = sin caché."""
    ttl = get_settings().cache_ttl if ttl is None else int(ttl)
    if ttl <= 0:
        return fn()
    hit = cache_get(key)
    if hit is not None:
        logger.debug("cache hit %s", key)
        return hit
    val = fn()
    cache_set(key, val, ttl_seconds=ttl)
    return val
