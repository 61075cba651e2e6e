"""End-to-end acceptance checks.

Each test prints one summary line, `CRITERION <k> PASS ...` or
`CRITERION <k> FAIL ...`, directly to the terminal, then asserts.
Tolerances: rational arithmetic is exact (no epsilon anywhere);
certificate checks use depth 32; brute-force scans go to N = 10^4.
Runtime bounds: criterion 1 under 10 s, criterion 4 under 30 s per
ordinal.
"""

import random
import time
from fractions import Fraction

import pytest

from ordchain.baire import (EmbeddingFamily, FSigmaWitness, fsigma_witness,
                            sample_pairs, verify_chain_monotone)
from ordchain.certs import (SplitChain, base_cert, compose_certs,
                            default_certificate, default_interval,
                            embed_ordinal, tree_child_certs, tree_node,
                            verify_certificate)
from ordchain.lazyset import ap, diff
from ordchain.metric import (LocalityError, MetricSpace, build_chain,
                             build_nets, psi)
from ordchain.ordinal import (LT, Ordinal, add, classify, compare,
                              fundamental_sequence, left_subtract,
                              parse_ordinal)
from ordchain.sampling import random_notation, sample_comparable_pairs

F = Fraction


@pytest.fixture
def announce(capsys):
    def _announce(k, ok, detail):
        with capsys.disabled():
            print(f"CRITERION {k} {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail
    return _announce


def random_1d_space(rng, n):
    den = rng.choice([1, 2, 4, 8])
    points = [F(p, den) for p in rng.sample(range(0, 50 * n), n)]
    order = list(range(n))
    rng.shuffle(order)
    return MetricSpace.from_points_1d(points, order)


def test_criterion_1_continuous_chain_50_points(announce):
    rng = random.Random(101)
    start = time.monotonic()
    ms = random_1d_space(rng, 50)
    table = build_chain(ms).value_table()
    bad = 0
    pairs = 0
    for pd in range(50):
        for pe in range(pd + 1, 50):
            d, e = ms.order[pd], ms.order[pe]
            pairs += 1
            if any(table[d][x] > table[e][x] for x in range(50)):
                bad += 1
            elif not table[d][d] < table[e][d]:
                bad += 1
    elapsed = time.monotonic() - start
    ok = bad == 0 and pairs == 1225 and elapsed < 10
    announce(1, ok, f"50-point chain: {pairs - bad}/{pairs} ordered pairs "
                    f"monotone and strict in {elapsed:.1f}s")


def test_criterion_2_range_bound_attained(announce):
    ms = MetricSpace.from_points_1d([F(0), F(1)])
    chain = build_chain(ms)
    value, tail = chain.eval(1, 0)
    ok = value == F(2) and tail == 0
    announce(2, ok, f"two-point upper function attains 2 exactly "
                    f"(got {value}, tail {tail})")


def test_criterion_3_net_invariants(announce):
    rng = random.Random(103)
    violations = 0
    evaluations = 0
    for trial in range(20):
        n = rng.randint(2, 100)
        ms = random_1d_space(rng, n)
        chain = build_chain(ms)
        nets = chain.nets
        for level in range(chain.stable_level + 2):
            violations += len(nets.check_level(level))
        # locality is enforced inside psi; evaluate broadly
        if n <= 40:
            targets = [(d, x) for d in range(n) for x in range(n)]
        else:
            targets = [(rng.randrange(n), rng.randrange(n))
                       for _ in range(300)]
        try:
            for d, x in targets:
                for level in range(chain.stable_level + 1):
                    psi(ms, nets, level, d, x)
                    evaluations += 1
        except LocalityError:
            violations += 1
    ok = violations == 0
    announce(3, ok, f"20 spaces: separation/maximality exhaustive, "
                    f"locality held over {evaluations} evaluations "
                    f"({violations} violations)")


def test_criterion_4_ordinal_embeddings(announce):
    ordinals = ["w", "w*2", "w^(2)", "w^(2)+w*3+5", "w^(w)"]
    failures = []
    times = []
    for text in ordinals:
        xi = parse_ordinal(text)
        start = time.monotonic()
        emb = embed_ordinal(xi, default_interval())
        rng = random.Random(104)
        for a, b in sample_comparable_pairs(xi, 200, rng):
            r = verify_certificate(emb.cert(a, b), 32)
            if not r.ok:
                failures.append((text, str(a), str(b), r.message))
        elapsed = time.monotonic() - start
        times.append(elapsed)
        if elapsed >= 30:
            failures.append((text, "runtime", f"{elapsed:.1f}s"))
    ok = not failures
    worst = max(times)
    announce(4, ok, f"5 ordinals x 200 pairs at depth 32: "
                    f"{len(failures)} failures, worst ordinal {worst:.1f}s")


def test_criterion_5_tree_discipline(announce):
    rng = random.Random(105)
    bad = 0
    for _ in range(50):
        s = tuple(rng.randint(0, 3) for _ in range(rng.randint(1, 3)))
        a = rng.randint(1, 4)
        b = rng.randint(a + 1, 5)
        if tree_node(s + (0,)).expr != tree_node(s).expr:
            bad += 1
        for cert in tree_child_certs(s, a, b):
            if not verify_certificate(cert, 32).ok:
                bad += 1
    announce(5, bad == 0, f"50 tree addresses: zero-extension identity and "
                          f"3 certificates each at depth 32 ({bad} failures)")


def test_criterion_6_baire_chain(announce):
    xi = parse_ordinal("w^(2)")
    emb = embed_ordinal(xi, default_interval())
    rng = random.Random(106)
    pairs = sample_comparable_pairs(xi, 100, rng)
    indices = sorted({a for p in pairs for a in p})
    family = EmbeddingFamily(emb, indices)
    report = verify_chain_monotone(family, pairs, depth=32,
                                   sample_points=indices[:6])
    witness_bad = 0
    for a, b in pairs[:40]:
        x, y = family.member(b), family.member(a)
        cert = family.cert(a, b)
        w = fsigma_witness(x, y, cert)
        probe = max(cert.bound, 64)
        if not w.check(y, x, probe):
            witness_bad += 1
        if w.m > 0 and FSigmaWitness(w.m - 1).check(y, x, probe):
            witness_bad += 1
    ok = report.ok and witness_bad == 0
    announce(6, ok, f"embedded w^2 family: {report.checked} pairs checked, "
                    f"{report.failed} failed; {witness_bad} witness "
                    f"minimality violations")


def test_criterion_7_oracle_equivalence(announce):
    N = 10 ** 4
    certs = []
    for n in range(10):
        for m in range(n + 1, 11):
            certs.append(base_cert(n, m))
    chain = SplitChain(default_certificate(ap(4, 0), ap(2, 0), 0))
    for k in range(1, 11):
        certs.append(chain.cert_lower(k))
        certs.append(chain.cert_upper(k))
        for j in range(k + 1, 11):
            certs.append(chain.cert_between(k, j))
    rng = random.Random(107)
    for _ in range(40):
        s = tuple(rng.randint(0, 2) for _ in range(rng.randint(1, 2)))
        a = rng.randint(1, 3)
        certs.extend(tree_child_certs(s, a, a + 1))
    for text in ["w^(2)", "w^(2)+w*3+5"]:
        xi = parse_ordinal(text)
        emb = embed_ordinal(xi, default_interval())
        for a, b in sample_comparable_pairs(xi, 90, rng):
            certs.append(emb.cert(a, b))
    base = SplitChain(default_interval())
    for _ in range(80):
        a = rng.randint(1, 4)
        b = rng.randint(a + 1, 6)
        c = rng.randint(b + 1, 8)
        certs.append(compose_certs(base.cert_between(a, b),
                                   base.cert_between(b, c)))
    certs = certs[:500]
    assert len(certs) == 500
    bad = 0
    for cert in certs:
        lower = cert.lower.bits(N)
        upper = cert.upper.bits(N)
        exceptions = [int(e) for e in (lower & ~upper).nonzero()[0]]
        if any(e >= cert.bound for e in exceptions):
            bad += 1
            continue
        for s in cert.surplus_elements(32):
            if not cert.upper.member(s) or cert.lower.member(s):
                bad += 1
                break
    announce(7, bad == 0, f"{len(certs)} certificates against brute-force "
                          f"scans to {N}: {bad} counterexamples")


def test_criterion_8_ordinal_algebra(announce):
    rng = random.Random(108)
    sample = [random_notation(rng, max_exponent=4, max_coeff=5, max_terms=3,
                              max_nat=9) for _ in range(1200)]
    bad = 0
    for a in sample:
        if compare(a, a) != 0:
            bad += 1
    for _ in range(1200):
        a, b = rng.choice(sample), rng.choice(sample)
        if compare(a, b) != -compare(b, a):
            bad += 1
        lo, hi = (a, b) if compare(a, b) != 1 else (b, a)
        if add(lo, left_subtract(lo, hi)) != hi:
            bad += 1
    for _ in range(300):
        a, b, c = (rng.choice(sample) for _ in range(3))
        if add(add(a, b), c) != add(a, add(b, c)):
            bad += 1
        if compare(a, b) == LT and compare(b, c) == LT \
                and compare(a, c) != LT:
            bad += 1
    limits = [a for a in sample if classify(a)[0] == "limit"][:25]
    for a in limits:
        fs = fundamental_sequence(a)
        values = [fs(k) for k in range(65)]
        for prev, cur in zip(values, values[1:]):
            if compare(prev, cur) != LT:
                bad += 1
        if any(compare(v, a) != LT for v in values):
            bad += 1
    announce(8, bad == 0, f"ordinal algebra over {len(sample)} notations "
                          f"and {len(limits)} fundamental sequences "
                          f"({bad} violations)")
