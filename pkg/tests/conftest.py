import os

import hypothesis
import pytest

from megagreedoids.constructions import from_rooted_graph
from megagreedoids.corpus import corpus_megagreedoids, generate_corpus
from megagreedoids.documents import build_megagreedoid, build_structure
from workflow import create_example_documents

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=5, deadline=None)
hypothesis.settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

CORPUS_SEED = 2024
CORPUS_SIZE = 60


@pytest.fixture(scope="session")
def example_documents():
    return create_example_documents()


@pytest.fixture(scope="session")
def rooted_graph(example_documents):
    """Root c; edges cf, ca, fp, fa, ps, sa; ground order a < f < p < s"""
    return build_structure(example_documents["rooted-graph"])


@pytest.fixture(scope="session")
def graph_mg(rooted_graph):
    return from_rooted_graph(rooted_graph)


@pytest.fixture(scope="session")
def greedoid_mg(example_documents):
    return build_megagreedoid(example_documents["greedoid"])


@pytest.fixture(scope="session")
def polymatroid_mg(example_documents):
    return build_megagreedoid(example_documents["polymatroid"])


@pytest.fixture(scope="session")
def corpus_documents():
    return generate_corpus(seed=CORPUS_SEED, size=CORPUS_SIZE, max_ground=5)


@pytest.fixture(scope="session")
def corpus(corpus_documents):
    """(document, megagreedoid) pairs, 60 instances with |I| <= 5"""
    return list(corpus_megagreedoids(corpus_documents))


@pytest.fixture(scope="session")
def corpus_mgs(corpus):
    return [m for _, m in corpus]
