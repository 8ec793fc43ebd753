from collections.abc import Callable
from pathlib import Path

import pytest

from lexkit import _cli
from lexkit.carrier import FinSetCarrier, enumerate_diagrams
from lexkit.config import Cutoffs
from lexkit.fincat import standard_shape


@pytest.fixture
def write_document(tmp_path: Path) -> Callable[[str, str], str]:
    """Write a document into the test directory and return its path."""

    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def lexkit_cli(capsys) -> Callable[[list[str]], tuple[int, str]]:
    """
    Run the command line in-process.

    Returns ``(exit code, stdout)``.
    """

    def _run(argv: list[str]) -> tuple[int, str]:
        with pytest.raises(SystemExit) as e:
            _cli.main(argv)
        return e.value.code, capsys.readouterr().out

    return _run


@pytest.fixture
def finset_pool() -> list:
    """Every pushout-along-a-mono span of finite sets of size at most 2."""
    carrier = FinSetCarrier()
    return list(
        enumerate_diagrams(carrier, standard_shape("mono_span"), carrier.objects(2))
    )


@pytest.fixture
def sweep() -> Cutoffs:
    return Cutoffs(max_size=2, samples=6, probe_bound=1, budget=1, seed=1)
