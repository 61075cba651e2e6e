"""Deterministic random sampling of ordinal notations.

Sampled notations are kept small on purpose: piece indices in the split
construction scale with the coefficients along a notation's term list, so
large coefficients make surplus elements astronomically sparse.
"""

from __future__ import annotations

import random
from typing import List, Tuple

from .ordinal import LT, Ordinal, compare

MAX_EXPONENT = 4
MAX_COEFF = 2
MAX_TERMS = 2
MAX_TRAILING_NAT = 3


def random_notation(rng: random.Random, max_exponent: int = MAX_EXPONENT,
                    max_coeff: int = MAX_COEFF, max_terms: int = MAX_TERMS,
                    max_nat: int = MAX_TRAILING_NAT) -> Ordinal:
    """A random notation below w^(max_exponent + 1)."""
    n_terms = rng.randint(1, min(max_terms, max_exponent + 1))
    exponents = sorted(rng.sample(range(max_exponent + 1), n_terms), reverse=True)
    terms = []
    for e in exponents:
        cap = max_nat if e == 0 else max_coeff
        terms.append((Ordinal.from_int(e), rng.randint(1, cap)))
    return Ordinal(terms)


def sample_below(bound: Ordinal, rng: random.Random,
                 max_tries: int = 10000, **profile) -> Ordinal:
    """Rejection-sample a notation strictly below `bound`."""
    for _ in range(max_tries):
        candidate = random_notation(rng, **profile)
        if compare(candidate, bound) == LT:
            return candidate
    raise ValueError(f"could not sample below {bound}")


def sample_comparable_pairs(bound: Ordinal, count: int, rng: random.Random,
                            **profile) -> List[Tuple[Ordinal, Ordinal]]:
    """`count` pairs (a, b) with a < b < bound."""
    out: List[Tuple[Ordinal, Ordinal]] = []
    while len(out) < count:
        a = sample_below(bound, rng, **profile)
        b = sample_below(bound, rng, **profile)
        c = compare(a, b)
        if c == 0:
            continue
        out.append((a, b) if c == LT else (b, a))
    return out
