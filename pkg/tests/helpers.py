"""Seeded generators shared by the randomized tests."""

import random
from datetime import date, timedelta

from ordep import Relation, Schema

TYPE_POOL = ("integer", "integer", "float", "text", "date")


def domain_values(rng: random.Random, typ: str, size: int) -> list:
    seeds = rng.sample(range(50), size)
    if typ == "integer":
        return seeds
    if typ == "float":
        return [v / 4 for v in seeds]
    if typ == "date":
        return [date(2020, 1, 1) + timedelta(days=v) for v in seeds]
    return [f"v{v:02d}" for v in seeds]


def random_relation(
    rng: random.Random,
    max_attrs: int = 6,
    max_rows: int = 30,
    max_domain: int = 4,
    with_nulls: bool = False,
) -> Relation:
    """A small relation with mixed column types and tiny domains.

    Tiny domains keep equivalence classes large, so dependencies of
    both kinds actually occur instead of everything being a key.
    """
    n_attr = rng.randint(2, max_attrs)
    n_rows = rng.randint(1, max_rows)
    types = [rng.choice(TYPE_POOL) for _ in range(n_attr)]
    policy = rng.choice(("nulls_first", "nulls_last")) if with_nulls else "nulls_first"
    schema = Schema(tuple((f"a{i}", t) for i, t in enumerate(types)), policy)
    cols = []
    for t in types:
        dom = domain_values(rng, t, rng.randint(1, max_domain))
        col = [rng.choice(dom) for _ in range(n_rows)]
        if with_nulls:
            col = [None if rng.random() < 0.15 else v for v in col]
        cols.append(col)
    return Relation.from_columns(schema, cols)


def random_int_relation(
    rng: random.Random,
    max_attrs: int = 5,
    max_rows: int = 8,
    max_domain: int = 3,
) -> Relation:
    """Integer-only variant; handy when a test re-checks raw values."""
    n_attr = rng.randint(2, max_attrs)
    n_rows = rng.randint(2, max_rows)
    schema = Schema(tuple((f"a{i}", "integer") for i in range(n_attr)))
    cols = []
    for _ in range(n_attr):
        dom = rng.randint(1, max_domain)
        cols.append([rng.randrange(dom + 1) for _ in range(n_rows)])
    return Relation.from_columns(schema, cols)
