import pytest

GOLDEN_HELP = (
    "rewrite golden fixture files from the current implementation "
    "instead of comparing against them"
)


def pytest_addoption(parser):
    parser.addoption("--regen-golden", action="store_true", help=GOLDEN_HELP)


@pytest.fixture
def regen_golden(request):
    return request.config.getoption("--regen-golden")
