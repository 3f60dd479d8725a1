# src/db.py
from __future__ import annotations

import json
import os
import sqlite3
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

REPO_ROOT = Path(__file__).resolve().parents[1]
load_dotenv(REPO_ROOT / ".env", override=False)

DEFAULT_CACHE_TTL = 7 * 24 * 3600


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        return default


@dataclass(frozen=True)
class Settings:
    data_dir: Path
    output_dir: Path
    workers: int
    blas_threads: int
    cache_ttl: int
    log_level: str

    @property
    def db_path(self) -> Path:
        return self.data_dir / "z2lab.sqlite3"


def get_settings() -> Settings:
    # se relee el entorno en cada llamada (los tests lo cambian con monkeypatch)
    return Settings(
        data_dir=Path(os.getenv("Z2LAB_DATA_DIR") or REPO_ROOT / "data"),
        output_dir=Path(os.getenv("Z2LAB_OUTPUT_DIR") or REPO_ROOT / "outputs"),
        workers=max(1, _env_int("Z2LAB_WORKERS", 1)),
        blas_threads=max(1, _env_int("Z2LAB_BLAS_THREADS", 1)),
        cache_ttl=max(0, _env_int("Z2LAB_CACHE_TTL", DEFAULT_CACHE_TTL)),
        log_level=(os.getenv("Z2LAB_LOG_LEVEL") or "INFO").upper(),
    )


def load_json(path: Path) -> Any:
    raw = Path(path).read_text(encoding="utf-8").strip() or "{}"
    return json.loads(raw)


def save_json(path: Path, data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True), encoding="utf-8")
    return path


def get_conn(db_path: Optional[Path] = None) -> sqlite3.Connection:
    path = Path(db_path) if db_path is not None else get_settings().db_path
    path.parent.mkdir(parents=True, exist_ok=True)
    conn = sqlite3.connect(str(path), check_same_thread=False)
    conn.row_factory = sqlite3.Row
    # Tabla usada por cache_store.py
    conn.execute(
        """
        CREATE TABLE IF NOT EXISTS kv_cache (
            key TEXT PRIMARY KEY,
            value_json TEXT NOT NULL,
            created_at INTEGER NOT NULL,
            expires_at INTEGER
        )
        """
    )
    conn.commit()
    return conn


def init_db() -> Dict[str, str]:
    s = get_settings()
    s.output_dir.mkdir(parents=True, exist_ok=True)
    get_conn().close()
    return {"db_path": str(s.db_path), "output_dir": str(s.output_dir), "initialized_at": _now_iso()}
