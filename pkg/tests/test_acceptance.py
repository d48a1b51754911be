"""Acceptance gate.  Every criterion prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` or directly with
``python tests/test_acceptance.py``.  All comparisons are exact: rationals
and integers must be equal, there is no numeric tolerance anywhere.  The two
wall-clock limits are pinned below.
"""

from __future__ import annotations

import itertools
import sys
import time
from pathlib import Path


sys.path.insert(0, str(Path(__file__).parent))

from heapchrome.chromatic import (
    bond_hilbert_polynomial,
    bond_lattice_polynomial,
    hilbert_series,
    k_chromatic_polynomial,
    lie_dim_via_lyndon,
    lie_dim_via_mobius,
    multicoloring_count,
    positive_derivative,
    positive_k_chromatic,
    positive_variant,
    discriminant,
    verify_connection,
)
from heapchrome.enumeration import (
    count_lyndon_heaps,
    enumerate_pyramids,
    enumerate_pyramids_with_basis,
    verify_proportionality,
    verify_pyramid_lyndon,
)
from heapchrome.graph import Graph, height, seed_graphs
from heapchrome.orientations import (
    count_lambda_compatible,
    count_m_lambda_formula,
    enumerate_acyclic,
    enumerate_m_lambda_labellings,
    lyndon_length_polynomial,
)
from heapchrome.polynomial import Polynomial
from heapchrome.series import verify_fundamental_lemmas
from heapchrome.verify import run_verify

from oracles import count_lyndon_words

MAIN_IDENTITY_SECONDS = 120
LEMMA_SECONDS = 60

# collected for the pytest terminal summary (see conftest.py)
CRITERION_LINES: list[str] = []


def instance_set():
    """Graphs on <= 4 vertices, weights with entries in {0,1,2} and height <= 6."""
    for g in seed_graphs(4):
        for k in itertools.product(range(3), repeat=g.n):
            if height(k) <= 6:
                yield g, k


def report(number: int, title: str, failures: list[str], checks: int, extra: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"[criterion {number:2d}] {status} {title} ({checks} checks{', ' + extra if extra else ''})"
    if failures:
        line += f"; {len(failures)} failures, first: {failures[0]}"
    CRITERION_LINES.append(line)
    print(line, flush=True)
    assert not failures, line


def test_criterion_01_main_identity():
    start = time.perf_counter()
    failures, checks = [], 0
    for g, k in instance_set():
        lhs = bond_lattice_polynomial(g, k)
        rhs = positive_variant(k_chromatic_polynomial(g, k), height(k))
        checks += 1
        if lhs != rhs:
            failures.append(f"{g} k={k}: {lhs} != {rhs}")
    elapsed = time.perf_counter() - start
    if elapsed >= MAIN_IDENTITY_SECONDS:
        failures.append(f"took {elapsed:.1f}s, limit {MAIN_IDENTITY_SECONDS}s")
    report(1, "main identity: bond lattice = positive k-chromatic", failures, checks, f"{elapsed:.1f}s")


def test_criterion_02_coloring_oracle():
    failures, checks = [], 0
    for g, k in instance_set():
        p = k_chromatic_polynomial(g, k)
        for q in range(height(k) + 2):
            checks += 1
            brute = multicoloring_count(g, k, q)
            if p(q) != brute:
                failures.append(f"{g} k={k} q={q}: {p(q)} != {brute}")
    report(2, "k-chromatic polynomial matches brute-force multicolorings", failures, checks)


def test_criterion_03_fundamental_lemmas():
    start = time.perf_counter()
    failures, checks = [], 0
    for g in seed_graphs(4):
        for entry in range(4):
            bound = (entry,) * g.n
            for rep in verify_fundamental_lemmas(g, bound):
                checks += rep.checks
                failures += [f"{g}: {f}" for f in rep.failures]
    elapsed = time.perf_counter() - start
    if elapsed >= LEMMA_SECONDS:
        failures.append(f"took {elapsed:.1f}s, limit {LEMMA_SECONDS}s")
    report(3, "inversion and logarithmic lemmas up to bound entries 3", failures, checks, f"{elapsed:.1f}s")


def test_criterion_04_pyramid_lemmas():
    failures, checks = [], 0
    for g, k in instance_set():
        if not any(k):
            continue
        for rep in (verify_proportionality(g, k), verify_pyramid_lyndon(g, k)):
            checks += rep.checks
            failures += [f"{g}: {f}" for f in rep.failures]
    k2 = Graph.complete(2)
    spot = (
        len(enumerate_pyramids(k2, (2, 1))),
        len(enumerate_pyramids_with_basis(k2, (2, 1), 0)),
        len(enumerate_pyramids_with_basis(k2, (2, 1), 1)),
    )
    checks += 1
    if spot != (3, 2, 1):
        failures.append(f"K2 k=(2,1): (|P|, |P^0|, |P^1|) = {spot}, expected (3, 2, 1)")
    report(4, "pyramid proportionality, clan graph and Lyndon-count formulas", failures, checks)


def test_criterion_05_lie_dimensions():
    failures, checks = [], 0
    for g, k in instance_set():
        if not any(k):
            continue
        checks += 1
        by_heaps = count_lyndon_heaps(g, k)
        by_mobius = lie_dim_via_mobius(g, k)
        if by_heaps != by_mobius:
            failures.append(f"{g} k={k}: {by_heaps} Lyndon heaps vs {by_mobius} from the Möbius formula")
    for r in range(1, 5):
        ones = (1,) * r
        checks += 1
        words = count_lyndon_words(ones)
        dim = lie_dim_via_lyndon(Graph.complete(r), ones)
        if dim != words:
            failures.append(f"K{r} multilinear: dim {dim} vs {words} Lyndon words")
    report(5, "Lyndon heaps = Möbius formula; complete graphs match Lyndon words", failures, checks)


def test_criterion_06_hilbert_series():
    failures, checks = [], 0
    for g, k in instance_set():
        checks += 1
        heaps = hilbert_series(g, k)
        parts = bond_hilbert_polynomial(g, k)
        if heaps != parts:
            failures.append(f"{g} k={k}: sum q^ll = {heaps} but sum mult(J) q^|J| = {parts}")
    for g in seed_graphs(5):
        ones = (1,) * g.n
        checks += 1
        if hilbert_series(g, ones) != positive_k_chromatic(g, ones):
            failures.append(f"{g}: Hilbert series at the all-ones weight differs from the positive chromatic polynomial")
    report(6, "Hilbert series = sum of mult(J) q^|J|; = positive chromatic at ones", failures, checks)


def test_criterion_07_orientations():
    failures, checks = [], 0
    for g in seed_graphs(5):
        acyclic = enumerate_acyclic(g)
        chi = positive_derivative(g, 0)
        checks += 2
        if chi(1) != len(acyclic):
            failures.append(f"{g}: positive chi(1) = {chi(1)} but {len(acyclic)} acyclic orientations")
        lengths = Polynomial(lyndon_length_polynomial(g))
        if lengths != chi:
            failures.append(f"{g}: sum q^ll(O) = {lengths} but positive chi = {chi}")
        if g.is_connected():
            disc = discriminant(g, (1,) * g.n)
            for i in range(g.n):
                checks += 1
                got = sum(1 for o in acyclic if o.sources() == [i])
                if got != disc:
                    failures.append(f"{g}: {got} orientations with unique source {i}, discriminant {disc}")
    k3 = Graph.complete(3)
    checks += 1
    spot = (len(enumerate_acyclic(k3)), discriminant(k3, (1, 1, 1)))
    if spot != (6, 2):
        failures.append(f"K3: (acyclic, discriminant) = {spot}, expected (6, 2)")
    report(7, "acyclic orientations, unique sources and Lyndon lengths", failures, checks)


def test_criterion_08_reciprocity():
    failures, checks = [], 0
    for g in seed_graphs(4):
        chi = positive_derivative(g, 0)
        for lam in (1, 2, 3):
            checks += 1
            got = count_lambda_compatible(g, lam, check=False)
            if got != chi(lam):
                failures.append(f"{g} lambda={lam}: {got} compatible pairs, positive chi gives {chi(lam)}")
        for m in range(min(2, g.n) + 1):
            expected = positive_derivative(g, m)
            for lam in (1, 2):
                checks += 1
                formula = count_m_lambda_formula(g, m, lam)
                listed = sum(len(enumerate_m_lambda_labellings(o, m, lam)) for o in enumerate_acyclic(g))
                if not formula == listed == expected(lam):
                    failures.append(f"{g} m={m} lambda={lam}: formula {formula}, listing {listed}, derivative {expected(lam)}")
    k2 = Graph.complete(2)
    checks += 1
    spot = count_m_lambda_formula(k2, 1, 1)
    if spot != 3:
        failures.append(f"K2 m=1 lambda=1: {spot}, expected 3")
    report(8, "compatible pairs and (m, lambda)-labelled orientations", failures, checks)


def test_criterion_09_connection():
    failures, checks = [], 0
    for g, k in instance_set():
        rep = verify_connection(g, k)
        checks += rep.checks
        failures += [f"{g}: {f}" for f in rep.failures]
    report(9, "k! pi_k(G) = chromatic polynomial of the clan graph", failures, checks)


def test_criterion_10_negative_control():
    failures, checks = [], 2
    g = Graph.complete(3)
    try:
        clean, _ = run_verify(g, (1, 1, 1))
        perturbed, outcomes = run_verify(g, (1, 1, 1), perturb_chrmult=True)
    except Exception as exc:  # a crash is a failure of this criterion
        failures.append(f"verify raised {type(exc).__name__}: {exc}")
    else:
        if clean != 0:
            failures.append(f"unperturbed verify exited {clean}")
        main = next(o for o in outcomes if o.name == "main-identity")
        if perturbed != 1 or main.passed:
            failures.append(f"perturbed verify exited {perturbed}, main identity passed={main.passed}")
    report(10, "verify fails cleanly when chrmult is perturbed", failures, checks)


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
