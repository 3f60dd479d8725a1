from src.db import get_conn, init_db
from src.services.cache_store import (
    cache_clear,
    cache_get,
    cache_get_or_set,
    cache_set,
    params_digest,
    purge_expired,
    report_key,
)


def test_set_and_get():
    cache_set("a", {"x": [1, 2]})
    assert cache_get("a") == {"x": [1, 2]}
    assert cache_get("missing") is None


def test_expired_entry_is_dropped():
    cache_set("old", 1, ttl_seconds=-1)
    assert cache_get("old") is None
    conn = get_conn()
    assert conn.execute("SELECT COUNT(*) FROM kv_cache WHERE key = 'old'").fetchone()[0] == 0
    conn.close()


def test_unreadable_entry_is_dropped():
    conn = get_conn()
    conn.execute(
        "INSERT INTO kv_cache(key, value_json, created_at, expires_at) VALUES (?, ?, ?, ?)",
        ("broken", "{not json", 0, None),
    )
    conn.commit()
    conn.close()
    assert cache_get("broken") is None


def test_clear_by_prefix():
    for k in ("report:a:1", "report:b:2", "other"):
        cache_set(k, 0)
    assert cache_clear("report:") == 2
    assert cache_get("other") == 0
    assert cache_clear() == 1


def test_get_or_set_calls_once():
    calls = []

    def fn():
        calls.append(1)
        return {"v": len(calls)}

    assert cache_get_or_set("k", fn, ttl=60) == {"v": 1}
    assert cache_get_or_set("k", fn, ttl=60) == {"v": 1}
    assert len(calls) == 1


def test_zero_ttl_skips_the_cache(monkeypatch):
    monkeypatch.setenv("Z2LAB_CACHE_TTL", "0")
    calls = []
    for _ in range(2):
        cache_get_or_set("k", lambda: calls.append(1) or len(calls))
    assert len(calls) == 2
    assert cache_get("k") is None


def test_report_key_ignores_param_order():
    a = report_key("torus_flux", {"n": 1, "cutoff": 8})
    b = report_key("torus_flux", {"cutoff": 8, "n": 1})
    assert a == b
    assert a.startswith("report:torus_flux:")
    assert params_digest({"n": 1}) != params_digest({"n": 2})


def test_init_db_creates_paths(isolated_dirs):
    info = init_db()
    assert info["db_path"].endswith("z2lab.sqlite3")
    assert isolated_dirs["out"].is_dir()
    assert cache_clear() == 0


def test_purge_expired_keeps_live_entries():
    cache_set("dead", 1, ttl_seconds=-5)
    cache_set("live", 2, ttl_seconds=3600)
    cache_set("forever", 3)
    assert purge_expired() == 1
    assert cache_get("live") == 2
    assert cache_get("forever") == 3
