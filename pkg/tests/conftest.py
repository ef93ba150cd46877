import random
import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
sys.path.insert(0, str(TESTS_DIR))

FIXTURES = TESTS_DIR / "fixtures"
CORPUS_DIR = FIXTURES / "corpus"
REFERENCE_LABELS_PATH = FIXTURES / "reference_labels.json"


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture
def reference_labels_path() -> Path:
    return REFERENCE_LABELS_PATH


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
