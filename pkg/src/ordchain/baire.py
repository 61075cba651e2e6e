"""Indicator functions of lower cones in a certified mod-finite chain.

For a chain family {x_i} the function f_x sends y to 1 exactly when y sits
strictly below x in the chain.  Each value is backed by a certificate (or
by irreflexivity when y is x itself); asking about an index the family
cannot compare is an error, never a silent 0.  The sections below x are
countable unions of sets cut out by "indicators eventually dominated",
which is what FSigmaWitness records.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .certs import (InvalidCertificateError, OrderCertificate, Report,
                    verify_certificate)
from .lazyset import LazySet
from .ordinal import Ordinal, compare, format_ordinal


class UnknownIndexError(KeyError):
    pass


class IncomparableError(ValueError):
    """The family cannot order the two indices; no value is invented."""


class ChainFamily:
    """Interface: an index set with a strict order, lazily materialized
    members, and a certificate for every comparable pair."""

    def indices(self):
        raise NotImplementedError

    def has_index(self, i) -> bool:
        raise NotImplementedError

    def label(self, i) -> str:
        raise NotImplementedError

    def order(self, i, j) -> int:
        """-1, 0 or 1; raises IncomparableError."""
        raise NotImplementedError

    def member(self, i) -> LazySet:
        raise NotImplementedError

    def cert(self, i, j) -> OrderCertificate:
        """Certificate for member(i) strictly below member(j); needs i < j."""
        raise NotImplementedError


class EmbeddingFamily(ChainFamily):
    """Chain family read off an ordinal embedding at a finite index sample."""

    def __init__(self, embedding, index_sample: Sequence[Ordinal]):
        self.embedding = embedding
        self._indices = list(index_sample)
        self._known = set(self._indices)

    def indices(self):
        return list(self._indices)

    def has_index(self, i) -> bool:
        return i in self._known

    def label(self, i) -> str:
        return format_ordinal(i, compact=True)

    def order(self, i, j) -> int:
        return compare(i, j)

    def member(self, i) -> LazySet:
        if not self.has_index(i):
            raise UnknownIndexError(f"index {i} not in family")
        return self.embedding.member(i)

    def cert(self, i, j) -> OrderCertificate:
        if not (self.has_index(i) and self.has_index(j)):
            raise UnknownIndexError(f"pair ({i}, {j}) not in family")
        return self.embedding.cert(i, j)


class ExplicitFamily(ChainFamily):
    """Finite chain given outright; the order is list position.  Handy for
    snapshots and for fault injection in tests."""

    def __init__(self, members: Sequence[LazySet],
                 certs: Dict[Tuple[int, int], OrderCertificate]):
        self.members = list(members)
        self.certs = dict(certs)

    def indices(self):
        return list(range(len(self.members)))

    def has_index(self, i) -> bool:
        return isinstance(i, int) and 0 <= i < len(self.members)

    def label(self, i) -> str:
        return str(i)

    def order(self, i, j) -> int:
        if not (self.has_index(i) and self.has_index(j)):
            raise UnknownIndexError(f"pair ({i}, {j}) not in family")
        return (i > j) - (i < j)

    def member(self, i) -> LazySet:
        if not self.has_index(i):
            raise UnknownIndexError(f"index {i} not in family")
        return self.members[i]

    def cert(self, i, j) -> OrderCertificate:
        if (i, j) not in self.certs:
            raise UnknownIndexError(f"no certificate for pair ({i}, {j})")
        return self.certs[(i, j)]


@dataclass(frozen=True)
class Justification:
    """Why an evaluation returned what it did."""

    reason: str                                 # "below", "above", "self"
    certificate: Optional[OrderCertificate]


class BaireFunction:
    """Indicator of the strict lower cone of `pivot` within the family."""

    def __init__(self, family: ChainFamily, pivot):
        if not family.has_index(pivot):
            raise UnknownIndexError(f"pivot {pivot} not in family")
        self.family = family
        self.pivot = pivot

    def evaluate(self, y) -> Tuple[int, Justification]:
        if not self.family.has_index(y):
            raise UnknownIndexError(f"index {y} not in family")
        c = self.family.order(y, self.pivot)
        if c == 0:
            return 0, Justification("self", None)
        if c < 0:
            return 1, Justification("below", self.family.cert(y, self.pivot))
        return 0, Justification("above", self.family.cert(self.pivot, y))

    def __call__(self, y) -> int:
        return self.evaluate(y)[0]


def make_baire_function(family: ChainFamily, pivot) -> BaireFunction:
    return BaireFunction(family, pivot)


@dataclass(frozen=True)
class FSigmaWitness:
    """Least m with y(n) <= x(n) for all n >= m (indicator comparison).

    Minimality means: m == 0, or the indicators disagree at m - 1.
    """

    m: int

    def check(self, y: LazySet, x: LazySet, probe: int) -> bool:
        for n in range(self.m, probe):
            if y.member(n) and not x.member(n):
                return False
        if self.m > 0 and not (y.member(self.m - 1) and not x.member(self.m - 1)):
            return False
        return True


def fsigma_witness(x: LazySet, y: LazySet,
                   evidence: Union[OrderCertificate, int]) -> FSigmaWitness:
    """Witness for y almost-contained in x, minimized by a downward scan.

    `evidence` is either a certificate with lower == y, upper == x, or a
    plain exception bound (equality-mod-finite evidence)."""
    if isinstance(evidence, OrderCertificate):
        if evidence.lower.expr != y.expr or evidence.upper.expr != x.expr:
            raise InvalidCertificateError(
                "certificate endpoints do not match the given sets")
        m0 = evidence.bound
    else:
        m0 = int(evidence)
        if m0 < 0:
            raise ValueError("exception bound must be a natural")
    m = m0
    for n in range(m0 - 1, -1, -1):
        if y.member(n) and not x.member(n):
            break
        m = n
    return FSigmaWitness(m)


@dataclass
class ChainReport:
    lines: List[str]
    checked: int
    failed: int

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def text(self) -> str:
        return "\n".join(self.lines + [f"CHECKED {self.checked} FAILED {self.failed}"])


def verify_chain_monotone(family: ChainFamily, pairs, depth: int,
                          sample_points=None) -> ChainReport:
    """Check pointwise monotonicity with strict witnesses over index pairs.

    For each pair i < j the pair certificate is probed to `depth`, the
    canonical strict witness f_j(x_i) = 1 > 0 = f_i(x_i) is evaluated, and
    f_i <= f_j is confirmed on the sampled family points.  One report line
    per pair, sorted deterministically by the given order.
    """
    lines: List[str] = []
    failed = 0
    points = list(sample_points) if sample_points is not None else []
    for raw_i, raw_j in pairs:
        try:
            c = family.order(raw_i, raw_j)
        except (IncomparableError, UnknownIndexError) as exc:
            lines.append(f"PAIR {raw_i} {raw_j} FAIL {exc}")
            failed += 1
            continue
        if c == 0:
            lines.append(f"PAIR {family.label(raw_i)} {family.label(raw_j)} "
                         "FAIL not strictly comparable")
            failed += 1
            continue
        i, j = (raw_i, raw_j) if c < 0 else (raw_j, raw_i)
        li, lj = family.label(i), family.label(j)
        reason = _check_pair(family, i, j, depth, points)
        if reason is None:
            lines.append(f"PAIR {li} {lj} OK")
        else:
            lines.append(f"PAIR {li} {lj} FAIL {reason}")
            failed += 1
    return ChainReport(lines, len(lines), failed)


def _check_pair(family, i, j, depth, points) -> Optional[str]:
    try:
        cert = family.cert(i, j)
    except UnknownIndexError as exc:
        return str(exc)
    if cert.lower.expr != family.member(i).expr:
        return "certificate lower end is not x_i"
    if cert.upper.expr != family.member(j).expr:
        return "certificate upper end is not x_j"
    r = verify_certificate(cert, depth)
    if not r.ok:
        return f"certificate: {r.message}"
    fi = BaireFunction(family, i)
    fj = BaireFunction(family, j)
    if not (fi(i) == 0 and fj(i) == 1):
        return "strict witness at x_i missing"
    for p in points:
        if fi(p) > fj(p):
            return f"monotonicity fails at point {family.label(p)}"
    return None


def sample_pairs(indices, count: int, rng: random.Random):
    """Deterministic sample of distinct-index pairs (repetition across the
    sample allowed)."""
    indices = list(indices)
    out = []
    if len(indices) < 2:
        return out
    while len(out) < count:
        a, b = rng.sample(range(len(indices)), 2)
        out.append((indices[a], indices[b]))
    return out
