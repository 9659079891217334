"""Deterministic rational sample streams for the verification suite.

Samples are drawn from a fixed enumeration of coprime pairs p/q with
p, q <= 12 (so numerators and denominators stay small), shuffled by the
seed.  Same seed, same stream, bit for bit.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction


def base_rationals(max_pq: int = 12):
    """All +-p/q with 1 <= p, q <= max_pq and gcd(p, q) = 1, fixed order."""
    out = []
    for q in range(1, max_pq + 1):
        for p in range(1, max_pq + 1):
            if math.gcd(p, q) == 1:
                out.append(Fraction(p, q))
                out.append(Fraction(-p, q))
    return out


def rational_stream(seed: int, count: int, avoid=None, max_pq: int = 12):
    """`count` deterministic rationals, skipping values where avoid(u) is true."""
    pool = base_rationals(max_pq)
    random.Random(seed).shuffle(pool)
    out = []
    for u in pool:
        if avoid is not None and avoid(u):
            continue
        out.append(u)
        if len(out) == count:
            return out
    raise ValueError(f"sample pool exhausted: wanted {count}, got {len(out)}")


def pair_stream(seed: int, count: int, avoid=None, max_pq: int = 12):
    """`count` deterministic pairs (u, v), skipping pairs where avoid(u, v) is true."""
    pool = base_rationals(max_pq)
    rng = random.Random(seed)
    us = pool[:]
    vs = pool[:]
    rng.shuffle(us)
    rng.shuffle(vs)
    out = []
    for u, v in zip(us, vs):
        if avoid is not None and avoid(u, v):
            continue
        out.append((u, v))
        if len(out) == count:
            return out
    # Fall back to the cartesian product if zipping was too wasteful.
    for u in us:
        for v in vs:
            if avoid is not None and avoid(u, v):
                continue
            if (u, v) in out:
                continue
            out.append((u, v))
            if len(out) == count:
                return out
    raise ValueError(f"sample pool exhausted: wanted {count} pairs")
