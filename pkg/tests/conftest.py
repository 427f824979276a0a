import os
import sys

import pytest

# Add the project root directory to Python path
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, project_root)

from hypothesis import settings  # noqa: E402

from src.category.catalog import chain, cyclic_monoid, discrete, parallel_pair, walking_arrow  # noqa: E402
from src.config import CORPUS_DIR  # noqa: E402

settings.register_profile("engine", max_examples=40, deadline=None)
settings.load_profile("engine")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive scans that take minutes")


@pytest.fixture
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture
def read_corpus(corpus_dir):
    def read(name):
        with open(os.path.join(corpus_dir, name), encoding="utf-8") as f:
            return f.read()
    return read


@pytest.fixture
def small_categories():
    """Handcrafted categories used across the law checks."""
    return [
        discrete(0), discrete(1), discrete(2), chain(2), chain(3),
        walking_arrow(), parallel_pair(), cyclic_monoid(2), cyclic_monoid(3),
    ]
