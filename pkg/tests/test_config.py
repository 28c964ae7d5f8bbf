
import os

import pytest

from ordopt.config import (
    WORKERS_ENV,
    BadWorkersSetting,
    default_workers,
    resolve_workers,
)


@pytest.fixture(autouse=True)
def fresh_cache() -> None:
    default_workers.cache_clear()


def test_unset_means_automatic(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    assert default_workers() is None
    assert resolve_workers(None) == max(1, os.cpu_count() or 1)


def test_auto_keyword(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(WORKERS_ENV, " Auto ")
    assert default_workers() is None


def test_explicit_count(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert default_workers() == 3
    assert resolve_workers(None) == 3
    assert resolve_workers(5) == 5


@pytest.mark.parametrize("raw", ["0", "-2", "many", "1.5"])
def test_bad_setting(monkeypatch: pytest.MonkeyPatch, raw: str) -> None:
    monkeypatch.setenv(WORKERS_ENV, raw)
    with pytest.raises(BadWorkersSetting) as info:
        default_workers()
    assert info.value.code == 2
