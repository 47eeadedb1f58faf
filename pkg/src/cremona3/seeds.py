"""Deterministic sub-seed derivation.

Every random draw in the pipeline comes from a random.Random seeded through
derive_seed, so retries and parallel sweep tasks are reproducible: the child
seed depends only on the labels, never on call order.
"""

import hashlib
import random


def derive_seed(*labels) -> int:
    blob = "\x1f".join(str(x) for x in labels).encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big")


def make_rng(*labels) -> random.Random:
    return random.Random(derive_seed(*labels))
