import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from eye2vec.data import sample_source
from eye2vec.embeddings import EmbeddingTable
from eye2vec.minilang import parse


@pytest.fixture(scope="session")
def sample_roots():
    return {name: parse(sample_source(name)) for name in ("point", "accumulator", "lookup")}


@pytest.fixture(scope="session")
def accumulator_root(sample_roots):
    return sample_roots["accumulator"]


@pytest.fixture(scope="session")
def small_table():
    return EmbeddingTable(dim=8, fallback_seed=42)
