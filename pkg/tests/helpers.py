"""Shared test utilities: seeded random reference strings."""

from __future__ import annotations

import random


def random_reference_string(
    rnd: random.Random, max_distinct: int, max_length: int, min_length: int = 1
) -> list[int]:
    """A random destination sequence over a random-sized alphabet."""
    length = rnd.randint(min_length, max_length)
    alphabet = rnd.randint(1, max_distinct)
    return [rnd.randrange(alphabet) for _ in range(length)]
