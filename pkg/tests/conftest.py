import numpy as np
import pytest


@pytest.fixture(autouse=True)
def isolated_dirs(tmp_path, monkeypatch):
    # caché sqlite y salidas dentro del tmp de cada test
    data = tmp_path / "data"
    out = tmp_path / "outputs"
    monkeypatch.setenv("Z2LAB_DATA_DIR", str(data))
    monkeypatch.setenv("Z2LAB_OUTPUT_DIR", str(out))
    monkeypatch.setenv("Z2LAB_WORKERS", "1")
    monkeypatch.delenv("Z2LAB_CACHE_TTL", raising=False)
    return {"data": data, "out": out}


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
