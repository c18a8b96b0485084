"""
Seeded random instances for the property suites and the oracle battery
"""

from __future__ import annotations

import random
from typing import Iterator

from config import Config

from .constructions import (
    Poset,
    RootedMultigraph,
    branching_greedoid,
    coverage_polymatroid,
    from_poset,
    from_rooted_graph,
    poset_greedoid,
    uniform_matroid,
)
from .core import GroundSet, Megagreedoid, contract, restrict
from .documents import (
    StructureDocument,
    build_megagreedoid,
    document_for_megagreedoid,
    document_for_poset,
    document_for_rank_table,
    document_for_rooted_graph,
)

LABELS = "abcdefghijklmnop"
ROOT = "r"
KINDS = ("rooted_graph", "poset", "polymatroid", "greedoid", "explicit")


def random_rooted_graph(rng: random.Random, n: int, half_edge_rate: float = 0.0) -> RootedMultigraph:
    """
    A random spanning tree on I + root plus a few extra (possibly parallel)
    edges, and a half-edge on each vertex with probability half_edge_rate
    (at least one when the rate is positive)
    """
    labels = list(LABELS[:n])
    edges = []
    for i, label in enumerate(labels):
        parent = rng.choice([ROOT] + labels[:i])
        edges.append((parent, label))
    vertices = [ROOT] + labels
    for _ in range(rng.randint(0, n)):
        edges.append(tuple(rng.sample(vertices, 2)))
    half_edges = [label for label in labels if rng.random() < half_edge_rate]
    if half_edge_rate and not half_edges:
        half_edges = [rng.choice(labels)]
    return RootedMultigraph(GroundSet(labels), ROOT, edges, half_edges)


def random_poset(rng: random.Random, n: int, density: float = 0.35) -> Poset:
    """Transitive closure of a random DAG along a shuffled order"""
    labels = list(LABELS[:n])
    shuffled = labels[:]
    rng.shuffle(shuffled)
    covers = [
        (shuffled[i], shuffled[j])
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < density
    ]
    return Poset(GroundSet(labels), covers)


def random_coverage_cover(rng: random.Random, n: int) -> dict[str, set[int]]:
    items = range(max(n, 1) + 1)
    return {label: {item for item in items if rng.random() < 0.4} for label in LABELS[:n]}


def random_branching_edges(rng: random.Random, n: int) -> dict[str, tuple[str, str]]:
    """
    n labelled edges around the root. From three edges on, the first three
    form a triangle through the root, so the branching greedoid is neither a
    matroid nor an antimatroid.
    """
    vertices = [ROOT]
    edges = {}
    triangle = [(ROOT, "1"), (ROOT, "2"), ("1", "2")] if n >= 3 else []
    for i, label in enumerate(LABELS[:n]):
        if i < len(triangle):
            edges[label] = triangle[i]
        elif len(vertices) < 2 or rng.random() < 0.5:
            edges[label] = (rng.choice(vertices), str(len(vertices)))
        else:
            edges[label] = tuple(rng.sample(vertices, 2))
        vertices.extend(v for v in edges[label] if v not in vertices)
    return edges


def random_minor(rng: random.Random, n: int) -> Megagreedoid:
    """
    Restriction to a nonempty feasible set, or contraction of a proper one,
    of a random rooted-graph or poset megagreedoid on n elements
    """
    if rng.random() < 0.5:
        source = from_rooted_graph(random_rooted_graph(rng, n, half_edge_rate=0.3))
    else:
        source = from_poset(random_poset(rng, n))
    if rng.random() < 0.5:
        return restrict(source, rng.choice([s for s in source.sorted_family() if s]))
    return contract(source, rng.choice([s for s in source.sorted_family() if s != source.full_mask]))


def generate_corpus(seed: int | None = None, size: int | None = None, max_ground: int | None = None) -> list[StructureDocument]:
    """
    Reproducible corpus cycling through rooted graphs (some with half-edges),
    posets, coverage polymatroids, greedoids (poset greedoids, uniform
    matroids, branching greedoids) and explicit documents of random minors
    """
    seed = Config.CORPUS_SEED if seed is None else seed
    size = Config.CORPUS_SIZE if size is None else size
    max_ground = Config.CORPUS_MAX_GROUND if max_ground is None else max_ground
    rng = random.Random(seed)
    documents = []
    for i in range(size):
        kind = KINDS[i % len(KINDS)]
        n = rng.randint(1, max_ground)
        name = f"{kind}-{i}"
        if kind == "rooted_graph":
            rate = 0.3 if (i // len(KINDS)) % 2 else 0.0
            documents.append(document_for_rooted_graph(name, random_rooted_graph(rng, n, half_edge_rate=rate)))
        elif kind == "poset":
            documents.append(document_for_poset(name, random_poset(rng, n)))
        elif kind == "polymatroid":
            labels = list(LABELS[:n])
            table = coverage_polymatroid(labels, random_coverage_cover(rng, n))
            documents.append(document_for_rank_table(name, table, "polymatroid"))
        elif kind == "explicit":
            documents.append(document_for_megagreedoid(name, random_minor(rng, n)))
        else:
            cycle = (i // len(KINDS)) % 3
            if cycle == 0:
                table = poset_greedoid(random_poset(rng, n))
            elif cycle == 1:
                table = uniform_matroid(rng.randint(0, n), list(LABELS[:n]))
            else:
                table = branching_greedoid(ROOT, random_branching_edges(rng, max(n, min(3, max_ground))))
            documents.append(document_for_rank_table(name, table, "greedoid"))
    return documents


def corpus_megagreedoids(documents: list[StructureDocument]) -> Iterator[tuple[StructureDocument, Megagreedoid]]:
    for document in documents:
        yield document, build_megagreedoid(document)
