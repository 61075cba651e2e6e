"""Certified almost-inclusion (strict mod-finite containment) on subsets of
the naturals.

A relation ``lower almost-contained-in upper`` is never decided; it is
witnessed by an OrderCertificate: a finite exception bound m (every element
of lower outside upper is < m) together with an enumerator of infinitely
many elements of upper that avoid lower.  Certificates are checkable to any
finite depth and compose transitively.

On top of the certificates this module builds:

* the base chain rows(0), rows(1), ... with its step certificates,
* interval splitting: an omega-chain strictly between any certified pair,
* the address tree x_s with x_s strictly below x_{s~a} below x_{s+},
* embeddings of ordinal notations into any certified interval.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .lazyset import (LazySet, ResourceLimitError, SetParseError, ap, diff,
                      inter, parse_set, piece, rows, union)
from .ordinal import (Ordinal, add, compare, fundamental_sequence,
                      left_subtract)


class InvalidCertificateError(ValueError):
    pass


SurplusLike = Union[LazySet, Sequence[int]]


@dataclass(frozen=True)
class OrderCertificate:
    """Witness that `lower` is strictly almost-contained in `upper`.

    Every element of lower \\ upper is < `bound`; `surplus` enumerates
    distinct elements of upper \\ lower (a LazySet enumerates its elements
    in increasing order; a plain sequence is taken as-is, which the
    verifier will happily refute if it misbehaves).
    """

    lower: LazySet
    upper: LazySet
    bound: int
    surplus: SurplusLike

    def surplus_elements(self, count: int) -> List[int]:
        if isinstance(self.surplus, LazySet):
            return self.surplus.first_n(count)
        out = list(self.surplus[:count])
        if len(out) < count:
            raise ResourceLimitError(
                f"explicit surplus has only {len(out)} elements")
        return out

    def serialize(self) -> str:
        return f"cert{{m={self.bound}, lower={self.lower.expr}, upper={self.upper.expr}}}"


def default_certificate(lower: LazySet, upper: LazySet, bound: int) -> OrderCertificate:
    """Certificate whose surplus is the set difference upper \\ lower."""
    return OrderCertificate(lower, upper, bound, diff(upper, lower))


_CERT_RE = re.compile(
    r"\s*cert\s*\{\s*m\s*=\s*(\d+)\s*,\s*lower\s*=(.*?),\s*upper\s*=(.*)\}\s*$",
    re.DOTALL)


def parse_certificate(text: str) -> OrderCertificate:
    m = _CERT_RE.match(text)
    if not m:
        raise SetParseError("expected cert{m=<nat>, lower=<set>, upper=<set>}")
    bound = int(m.group(1))
    lower = parse_set(m.group(2))
    upper = parse_set(m.group(3))
    return default_certificate(lower, upper, bound)


@dataclass(frozen=True)
class Report:
    ok: bool
    message: str

    def __bool__(self):
        return self.ok


def verify_certificate(cert: OrderCertificate, depth: int) -> Report:
    """Probe a certificate to finite depth.

    Draws `depth` surplus elements (distinct, in upper, not in lower) and
    checks every element of lower up to the probe bound: those >= the
    exception bound must lie in upper.  A failed check is reported, not
    raised.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    try:
        surplus = cert.surplus_elements(depth)
    except ResourceLimitError as exc:
        return Report(False, f"surplus exhausted: {exc}")
    if len(set(surplus)) != len(surplus):
        dupe = next(s for s in surplus if surplus.count(s) > 1)
        return Report(False, f"surplus repeats element {dupe}")
    for s in surplus:
        if not cert.upper.member(s):
            return Report(False, f"surplus element {s} not in upper")
        if cert.lower.member(s):
            return Report(False, f"surplus element {s} lies in lower")
    probe = max(cert.bound, max(surplus, default=0), 4 * depth)
    for e in cert.lower.members_upto(probe + 1):
        if e >= cert.bound and not cert.upper.member(e):
            return Report(False, f"element {e}")
    return Report(True, "OK")


def compose_certs(c1: OrderCertificate, c2: OrderCertificate) -> OrderCertificate:
    """Transitivity: certificates for (x,y) and (y,z) give one for (x,z).

    The middle sets must be expression-identical.  Surplus elements of the
    second leg below the first exception bound are dropped; the rest cannot
    lie in x.
    """
    if c1.upper.expr != c2.lower.expr:
        raise InvalidCertificateError("middle sets do not match")
    bound = max(c1.bound, c2.bound)
    surplus = c2.surplus
    if c1.bound > 0:
        if isinstance(surplus, LazySet):
            surplus = inter(surplus, ap(1, c1.bound))
        else:
            surplus = [s for s in surplus if s >= c1.bound]
    return OrderCertificate(c1.lower, c2.upper, bound, surplus)


# ---------------------------------------------------------------------------
# Base chain.

def base_chain(n: int) -> LazySet:
    """Union of the first n rows of the pairing; rows(0) is empty and every
    complement is infinite."""
    return rows(n)


def base_cert(n: int, m: int) -> OrderCertificate:
    if not n < m:
        raise ValueError("need n < m")
    return default_certificate(rows(n), rows(m), 0)


# ---------------------------------------------------------------------------
# Interval splitting.

class SplitChain:
    """The omega-chain z_1, z_2, ... strictly between a certified pair.

    z_0 is lower-inter-upper (so exception bounds never grow), and
    z_{k+1} = z_k + piece k of the interval's surplus.  The pieces are
    pairwise disjoint infinite slices of upper \\ lower, which yields
    certificates with infinite surplus at every step.
    """

    def __init__(self, cert: OrderCertificate, validate: bool = True,
                 validate_depth: int = 4):
        if not isinstance(cert.surplus, LazySet):
            raise InvalidCertificateError("split needs a set-backed surplus")
        if validate:
            r = verify_certificate(cert, validate_depth)
            if not r.ok:
                raise InvalidCertificateError(f"invalid interval certificate: {r.message}")
        self.cert = cert
        self.x = cert.lower
        self.y = cert.upper
        self.bound = cert.bound
        self.source = cert.surplus
        self._z: List[LazySet] = [inter(self.x, self.y)]

    def slice_piece(self, k: int) -> LazySet:
        return piece(self.source, k)

    def z(self, k: int) -> LazySet:
        while len(self._z) <= k:
            j = len(self._z) - 1
            self._z.append(union(self._z[j], self.slice_piece(j)))
        return self._z[k]

    def cert_lower(self, k: int) -> OrderCertificate:
        """lower-end certificate: x strictly below z_k (k >= 1)."""
        if k < 1:
            raise ValueError("k >= 1")
        return OrderCertificate(self.x, self.z(k), self.bound, self.slice_piece(0))

    def cert_between(self, a: int, b: int) -> OrderCertificate:
        """z_a strictly below z_b for 1 <= a < b (z_a is a subset of z_b)."""
        if not 1 <= a < b:
            raise ValueError("need 1 <= a < b")
        return OrderCertificate(self.z(a), self.z(b), 0, self.slice_piece(a))

    def cert_step(self, k: int) -> OrderCertificate:
        return self.cert_between(k, k + 1)

    def cert_upper(self, k: int) -> OrderCertificate:
        """upper-end certificate: z_k strictly below y (k >= 1)."""
        if k < 1:
            raise ValueError("k >= 1")
        return OrderCertificate(self.z(k), self.y, 0, self.slice_piece(k))


def split_interval(cert: OrderCertificate, count: int,
                   validate: bool = True) -> List[Tuple[LazySet, OrderCertificate]]:
    """First `count` split sets with their step certificates
    (x below z_1, then z_k below z_{k+1})."""
    chain = SplitChain(cert, validate=validate)
    out = []
    for k in range(1, count + 1):
        c = chain.cert_lower(1) if k == 1 else chain.cert_step(k - 1)
        out.append((chain.z(k), c))
    return out


# ---------------------------------------------------------------------------
# The address tree.

TreeAddress = Tuple[int, ...]

_tree_splits: Dict[TreeAddress, SplitChain] = {}


def _check_address(s: TreeAddress) -> TreeAddress:
    s = tuple(s)
    if not s:
        raise ValueError("tree address must be nonempty")
    if any((not isinstance(a, int)) or a < 0 for a in s):
        raise ValueError("tree address entries must be naturals")
    return s


def normalize_address(s: TreeAddress) -> TreeAddress:
    """Extension by 0 does not move: trailing zeros are dropped."""
    s = _check_address(s)
    while len(s) > 1 and s[-1] == 0:
        s = s[:-1]
    return s


def tree_split(s: TreeAddress) -> SplitChain:
    """Split of the interval (x_s, x_{s+}), memoized per literal address."""
    s = _check_address(s)
    chain = _tree_splits.get(s)
    if chain is None:
        chain = SplitChain(tree_interval_cert(s), validate=False)
        _tree_splits[s] = chain
    return chain


def tree_node(s: TreeAddress) -> LazySet:
    """The set at address s: length-1 addresses are the base chain and
    x_{s~a} is the a-th split point of (x_s, x_{s+})."""
    s = normalize_address(s)
    if len(s) == 1:
        return base_chain(s[0])
    return tree_split(s[:-1]).z(s[-1])


def tree_interval_cert(s: TreeAddress) -> OrderCertificate:
    """Certificate for x_s strictly below x_{s+}."""
    s = _check_address(s)
    if len(s) == 1:
        return base_cert(s[0], s[0] + 1)
    parent, a = s[:-1], s[-1]
    chain = tree_split(parent)
    if a == 0:
        return chain.cert_lower(1)
    return chain.cert_between(a, a + 1)


def tree_child_certs(s: TreeAddress, a: int, b: int):
    """Certificates for x_s < x_{s~a} < x_{s~b} < x_{s+} with 0 < a < b."""
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    chain = tree_split(_check_address(s))
    return chain.cert_lower(a), chain.cert_between(a, b), chain.cert_upper(b)


# ---------------------------------------------------------------------------
# Ordinal embeddings.

def _is_pure_power(a: Ordinal) -> bool:
    """Exactly one term, coefficient 1, exponent >= 1 (i.e. a limit power)."""
    return (len(a.terms) == 1 and a.terms[0][1] == 1
            and not a.terms[0][0].is_zero())


_ONE = Ordinal.from_int(1)


class OrdinalEmbedding:
    """Order embedding of the notations below `bound` into a certified
    interval, with derivable certificates for every comparable pair.

    The interval is split once into the chain x < z_1 < z_2 < ... < y and
    the notations below `bound` are distributed over consecutive slots,
    slot t sitting in (z_t, z_{t+1}) (slot 0 in (x, z_1)):

    * a limit power w^e is cut along its fundamental sequence, one segment
      per slot — each segment is again a limit power, one exponent step
      down, or a single point;
    * any other notation is cut term-by-term into blocks of type w^e, one
      coefficient unit per slot;
    * a single-point slot maps straight to the split point z_{t+1}.

    Splits are memoized and evaluation is lazy per queried notation; slot
    indices stay proportional to the coefficients along a notation's term
    list, which keeps the derived surplus sets scannable.
    """

    def __init__(self, bound: Ordinal, interval: OrderCertificate,
                 validate: bool = True):
        if validate and not isinstance(interval.surplus, LazySet):
            raise InvalidCertificateError("embedding needs a set-backed surplus")
        if validate:
            r = verify_certificate(interval, 4)
            if not r.ok:
                raise InvalidCertificateError(
                    f"invalid interval certificate: {r.message}")
        self.bound = bound
        self.interval = interval
        self._chain: Optional[SplitChain] = None
        self._subs: Dict[int, "OrdinalEmbedding"] = {}
        if bound.is_zero():
            self._mode = "empty"
        elif _is_pure_power(bound):
            self._mode = "segments"
            self._fs = fundamental_sequence(bound)
            self._ends: List[Ordinal] = []
        else:
            self._mode = "blocks"
            starts, types = [], []
            acc = Ordinal()
            for e, c in bound.terms:
                unit = Ordinal(((e, 1),)) if not e.is_zero() else _ONE
                for _ in range(c):
                    starts.append(acc)
                    types.append(unit)
                    acc = add(acc, unit)
            self._starts = starts
            self._types = types

    # -- structure ---------------------------------------------------------

    def _split_chain(self) -> SplitChain:
        if self._chain is None:
            self._chain = SplitChain(self.interval, validate=False)
        return self._chain

    def _end(self, t: int) -> Ordinal:
        """Upper boundary of slot t."""
        if self._mode == "blocks":
            return add(self._starts[t], self._types[t])
        while len(self._ends) <= t:
            self._ends.append(self._fs(len(self._ends)))
        return self._ends[t]

    def _slot(self, t: int) -> Tuple[Ordinal, Ordinal]:
        """(start, type) of slot t."""
        if self._mode == "blocks":
            return self._starts[t], self._types[t]
        if t == 0:
            return Ordinal(), self._end(0)
        start = self._end(t - 1)
        return start, left_subtract(start, self._end(t))

    def _is_unit(self, t: int) -> bool:
        return compare(self._slot(t)[1], _ONE) == 0

    def _sub(self, t: int) -> "OrdinalEmbedding":
        sub = self._subs.get(t)
        if sub is None:
            chain = self._split_chain()
            seg_cert = chain.cert_lower(1) if t == 0 else chain.cert_between(t, t + 1)
            sub = OrdinalEmbedding(self._slot(t)[1], seg_cert, validate=False)
            self._subs[t] = sub
        return sub

    def _locate(self, alpha: Ordinal) -> Tuple[int, Ordinal]:
        """Slot index and offset within the slot."""
        t = 0
        while compare(alpha, self._end(t)) != -1:
            t += 1
        start = self._slot(t)[0]
        return t, left_subtract(start, alpha)

    def _require_below(self, alpha: Ordinal) -> None:
        if compare(alpha, self.bound) != -1:
            raise KeyError(f"notation {alpha} is not below {self.bound}")

    # -- queries -----------------------------------------------------------

    def member(self, alpha: Ordinal) -> LazySet:
        self._require_below(alpha)
        t, off = self._locate(alpha)
        if self._is_unit(t):
            return self._split_chain().z(t + 1)
        return self._sub(t).member(off)

    def cert(self, alpha: Ordinal, beta: Ordinal) -> OrderCertificate:
        """Certificate for e(alpha) strictly below e(beta), alpha < beta."""
        if compare(alpha, beta) != -1:
            raise ValueError("need alpha < beta")
        self._require_below(beta)
        ta, offa = self._locate(alpha)
        tb, offb = self._locate(beta)
        if ta == tb:
            return self._sub(ta).cert(offa, offb)
        chain = self._split_chain()
        # climb from e(alpha) up to z_{ta+1}, along the chain, into slot tb
        legs: List[OrderCertificate] = []
        if not self._is_unit(ta):
            legs.append(self._sub(ta).upper_cert(offa))
        exit_level = ta + 1
        if self._is_unit(tb):
            legs.append(chain.cert_between(exit_level, tb + 1))
        else:
            if exit_level < tb:
                legs.append(chain.cert_between(exit_level, tb))
            legs.append(self._sub(tb).lower_cert(offb))
        out = legs[0]
        for leg in legs[1:]:
            out = compose_certs(out, leg)
        return out

    def lower_cert(self, alpha: Ordinal) -> OrderCertificate:
        """Certificate for interval-lower strictly below e(alpha)."""
        self._require_below(alpha)
        t, off = self._locate(alpha)
        chain = self._split_chain()
        if self._is_unit(t):
            return chain.cert_lower(t + 1)
        inner = self._sub(t).lower_cert(off)
        if t == 0:
            return inner
        return compose_certs(chain.cert_lower(t), inner)

    def upper_cert(self, alpha: Ordinal) -> OrderCertificate:
        """Certificate for e(alpha) strictly below interval-upper."""
        self._require_below(alpha)
        t, off = self._locate(alpha)
        chain = self._split_chain()
        if self._is_unit(t):
            return chain.cert_upper(t + 1)
        return compose_certs(self._sub(t).upper_cert(off),
                             chain.cert_upper(t + 1))


def embed_ordinal(bound: Ordinal, interval: OrderCertificate,
                  validate: bool = True) -> OrdinalEmbedding:
    return OrdinalEmbedding(bound, interval, validate=validate)


def default_interval() -> OrderCertificate:
    """The interval (rows(0), rows(1)): empty set below the evens."""
    return base_cert(0, 1)
