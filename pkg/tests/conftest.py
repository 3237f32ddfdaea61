from pathlib import Path

import pytest

GOLDEN_DIR = Path(__file__).parent / "golden"


def pytest_addoption(parser):
    parser.addoption(
        "--update-golden", action="store_true", default=False, help="Rewrite the CLI golden files in tests/golden"
    )


@pytest.fixture
def golden(request):
    """Compare text with a golden file; `--update-golden` rewrites it instead."""
    update = request.config.getoption("--update-golden")

    def check(name: str, text: str) -> None:
        path = GOLDEN_DIR / name
        if update:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            pytest.skip(f"Golden file {name} written")
        if not path.exists():
            pytest.fail(f"Golden file {name} is missing; run pytest --update-golden to create it")
        assert text == path.read_text(encoding="utf-8")

    return check
