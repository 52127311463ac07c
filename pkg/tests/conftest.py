import random

import pytest

from flagbound.arrangement import FlatTable, VectorSet, generate_sign_vectors
from flagbound.exactlin import primitive, rank


def random_spanning_set(dim: int, count: int, seed: int, bound: int = 3) -> VectorSet:
    """Deterministic random VectorSet: integer entries in [-bound, bound],
    zero vectors and parallel pairs rejected, redrawn until it spans."""
    attempt = 0
    while True:
        rng = random.Random(seed * 1_000_003 + attempt)
        picked: list[tuple[int, ...]] = []
        directions = set()
        tries = 0
        while len(picked) < count and tries < 10000:
            tries += 1
            v = tuple(rng.randint(-bound, bound) for _ in range(dim))
            if not any(v):
                continue
            p = primitive(v)
            if p in directions:
                continue
            directions.add(p)
            picked.append(v)
        if len(picked) == count and rank(picked) == dim:
            return VectorSet(tuple(picked), dim)
        attempt += 1


@pytest.fixture(scope="session")
def sign_tables():
    """Shared (VectorSet, FlatTable) pairs for n = 1..4."""
    out = {}
    for n in range(1, 5):
        vs = generate_sign_vectors(n)
        out[n] = (vs, FlatTable(vs))
    return out
