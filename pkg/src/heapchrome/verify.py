"""The verification battery: every identity, on one graph, for all weights up to a bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import chromatic as chrom
from .enumeration import (
    EnumerationTooLarge,
    Report,
    enumerate_heaps,
    max_height,
    verify_proportionality,
    verify_pyramid_lyndon,
)
from .graph import Graph, WeightVector, check_weight, height, is_connected_support, weights_below
from .heaps import lyndon_factorizations
from .orientations import (
    count_lambda_compatible,
    count_m_lambda_labelled,
    enumerate_acyclic,
    lyndon_length_polynomial,
)
from .polynomial import Polynomial
from .series import verify_fundamental_lemmas


@dataclass
class Outcome:
    name: str
    passed: bool
    checks: int
    counterexample: str | None = None
    advisory: bool = False

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tag = " [advisory]" if self.advisory else ""
        text = f"{status} {self.name}{tag} ({self.checks} checks)"
        if self.counterexample:
            text += f": {self.counterexample}"
        return text

    def to_json(self) -> dict:
        return {
            "identity": self.name,
            "status": "PASS" if self.passed else "FAIL",
            "checks": self.checks,
            "advisory": self.advisory,
            "counterexample": self.counterexample,
        }


def _collect(name: str, fn: Callable[[Report], None], advisory: bool = False) -> Outcome:
    report = Report(name)
    try:
        fn(report)
    except chrom.InvariantViolation as exc:
        report.check(False, f"invariant violated: {exc}")
    return Outcome(name, report.passed, report.checks, report.failures[0] if report.failures else None, advisory)


def _weights(bound: WeightVector) -> list[WeightVector]:
    return [m for m in weights_below(bound) if any(m)]


def run_verify(g: Graph, bound: Iterable[int], perturb_chrmult: bool = False) -> tuple[int, list[Outcome]]:
    """Run the battery; return ``(exit code, outcomes)``.  Exit 0 iff every
    non-advisory identity holds, 1 otherwise."""
    bound = check_weight(g, bound)
    if height(bound) > max_height():
        raise EnumerationTooLarge(
            f"bound {bound} has height {height(bound)} > cap {max_height()}; "
            f"lower the bound or set HEAPCHROME_MAX_HT"
        )
    weights = _weights(bound)
    outcomes: list[Outcome] = []

    def main_identity(r: Report) -> None:
        for m in [(0,) * g.n] + weights:
            r.merge(chrom.verify_main_identity(g, m))

    def coloring_oracle(r: Report) -> None:
        for m in weights:
            p = chrom.k_chromatic_polynomial(g, m)
            for q in range(height(m) + 2):
                brute = chrom.multicoloring_count(g, m, q)
                r.check(p(q) == brute, f"pi_{m}({q}) = {p(q)} but brute force counts {brute}")

    def lemmas(r: Report) -> None:
        inv, log = verify_fundamental_lemmas(g, bound)
        r.merge(inv)
        r.merge(log)

    def proportionality(r: Report) -> None:
        for m in weights:
            r.merge(verify_proportionality(g, m))

    def pyramid_lyndon(r: Report) -> None:
        for m in weights:
            r.merge(verify_pyramid_lyndon(g, m))

    def lalonde(r: Report) -> None:
        for m in weights:
            by_lyndon = chrom.lie_dim_via_lyndon(g, m)
            by_mobius = chrom.lie_dim_via_mobius(g, m)
            r.check(by_lyndon == by_mobius, f"dim L_{m}: {by_lyndon} Lyndon heaps vs Möbius {by_mobius}")
            if is_connected_support(g, m):
                r.merge(chrom.verify_chrmult_discriminant(g, m))

    def factorization(r: Report) -> None:
        for m in weights:
            for e in enumerate_heaps(g, m):
                r.check(len(lyndon_factorizations(e)) == 1, f"{e!r} has no unique Lyndon factorization")

    def hilbert(r: Report) -> None:
        for m in weights:
            h = chrom.hilbert_series(g, m)
            b = chrom.bond_hilbert_polynomial(g, m, multiset=True)
            r.check(h == b, f"H_{m} = {h} but multiset bond count gives {b}")
        ones = (1,) * g.n
        h1 = chrom.hilbert_series(g, ones)
        r.check(h1 == chrom.positive_k_chromatic(g, ones), f"H_1 = {h1} differs from the positive chromatic polynomial")

    def hilbert_product(r: Report) -> None:
        for m in weights:
            h = chrom.hilbert_series(g, m)
            b = chrom.bond_hilbert_polynomial(g, m)
            r.check(h == b, f"H_{m} = {h} but product of mult^(repeats) gives {b}")

    def connection(r: Report) -> None:
        for m in weights:
            r.merge(chrom.verify_connection(g, m))

    def orientations(r: Report) -> None:
        acyclic = enumerate_acyclic(g)
        chi = chrom.positive_derivative(g, 0)
        r.check(chi(1) == len(acyclic), f"positive chi(1) = {chi(1)} but {len(acyclic)} acyclic orientations")
        lengths = Polynomial(lyndon_length_polynomial(g))
        r.check(lengths == chi, f"sum q^ll(O) = {lengths} differs from {chi}")
        if g.is_connected():
            disc = chrom.discriminant(g, (1,) * g.n)
            for i in range(g.n):
                count = sum(1 for o in acyclic if o.sources() == [i])
                r.check(count == disc, f"{count} orientations with unique source {i}, discriminant {disc}")

    def reciprocity(r: Report) -> None:
        for lam in (1, 2, 3):
            count = count_lambda_compatible(g, lam, check=False)
            expected = chrom.positive_derivative(g, 0)(lam)
            r.check(count == expected, f"{count} {lam}-compatible pairs, expected {expected}")
        for m in range(g.n + 1):
            for lam in (1, 2):
                # raises InvariantViolation on disagreement
                count_m_lambda_labelled(g, m, lam)
                r.check(True, "")

    battery = [
        ("main-identity", main_identity, False),
        ("coloring-oracle", coloring_oracle, False),
        ("fundamental-lemmas", lemmas, False),
        ("pyramid-proportionality", proportionality, False),
        ("pyramid-lyndon", pyramid_lyndon, False),
        ("lalonde-mobius", lalonde, False),
        ("lyndon-factorization", factorization, False),
        ("hilbert-series", hilbert, False),
        ("hilbert-series-product-form", hilbert_product, True),
        ("connection", connection, False),
        ("acyclic-orientations", orientations, False),
        ("reciprocity", reciprocity, False),
    ]
    if perturb_chrmult:
        with chrom.perturbed_chrmult(Fraction(1, 7)):
            outcomes.append(_collect("main-identity", main_identity))
        battery = battery[1:]
    for name, fn, advisory in battery:
        outcomes.append(_collect(name, fn, advisory))
    failed = any(not o.passed and not o.advisory for o in outcomes)
    return (1 if failed else 0), outcomes
