# scripts/clear_cache.py
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from src.db import init_db  # noqa: E402
from src.services.cache_store import cache_clear, purge_expired  # noqa: E402

# sin argumentos borra toda la caché; con un argumento, sólo ese experimento
name = sys.argv[1] if len(sys.argv) > 1 else None
prefix = f"report:{name}:" if name else None

info = init_db()
expired = purge_expired()
removed = cache_clear(prefix)
print(f"OK -> {expired} vencidas, {removed} borradas en {info['db_path']}")
