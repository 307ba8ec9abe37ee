"""Acceptance criteria 1-10, each at its stated bounds and runtime limit.

Every criterion prints one PASS/FAIL line. Run standalone with
``python3 tests/test_acceptance.py`` or through pytest.
"""

import random
import sys
import time

import pytest

from exostar.expr import format_json, format_text, from_json, parse_phasefn
from exostar.verify import random_phasefn, run_suite


def _run(number, title, limit, suites):
    """Run the named suites with default bounds; return (ok, seconds, message)."""
    start = time.perf_counter()
    reports = [run_suite(name, **bounds) for name, bounds in suites]
    elapsed = time.perf_counter() - start
    failed = [r for r in reports if not r.passed]
    cases = sum(r.cases_run for r in reports)
    ok = not failed and elapsed < limit
    why = ""
    if failed:
        why = "; ".join(r.to_text().splitlines()[-2] + f" ({r.suite})" for r in failed)
    elif elapsed >= limit:
        why = f"over the {limit}s limit"
    extra = [d for r in reports for d in r.details]
    return ok, elapsed, f"{cases} checks" + (f"; {why}" if why else ""), extra


def _roundtrip_and_determinism():
    start = time.perf_counter()
    rng = random.Random(20240601)
    bad = 0
    for _ in range(500):
        F = random_phasefn(rng, max_p=4, max_q=5, terms=rng.randint(1, 6), max_h=2)
        if parse_phasefn(format_text(F)) != F or from_json(format_json(F)) != F:
            bad += 1
    same = all(
        run_suite(name, seed=99).to_json() == run_suite(name, seed=99).to_json()
        for name in ("mobius-op", "canonical", "jacobi")
    )
    elapsed = time.perf_counter() - start
    ok = bad == 0 and same and elapsed < 5
    msg = f"500 round trips, {bad} mismatches; reports byte-identical: {same}"
    return ok, elapsed, msg, []


CRITERIA = {
    1: ("star-product axioms", 5, [("def1", {})]),
    2: ("associativity", 60, [("assoc", {})]),
    3: ("conjugated Moyal equals exotic product", 30, [("prop1", {})]),
    4: ("conjugated Moyal terms are transvectants", 60, [("prop43", {})]),
    5: ("J3 = J5 = 0 and closed forms of J7, J9", 10, [("lemma51", {}), ("coc-forms", {})]),
    6: ("J7, J9 cocycles and the cyclic J3(J7) identity", 30, [("cocycles", {}), ("j3j7", {})]),
    7: ("J7, J9 not coboundaries for K <= 10", 30, [("nontrivial", {"max_K": 10})]),
    8: ("sl2 equivariance", 10, [("equivariance", {})]),
    9: ("operator representations", 30, [("canonical", {}), ("homomorphism", {}), ("mobius-op", {})]),
}


def evaluate(number):
    if number == 10:
        return ("round trip and determinism", 5) + _roundtrip_and_determinism()
    title, limit, suites = CRITERIA[number]
    return (title, limit) + _run(number, title, limit, suites)


def _line(number, title, limit, ok, elapsed, msg):
    return f"criterion {number:2d} [{'PASS' if ok else 'FAIL'}] {title}: {msg} ({elapsed:.2f}s, limit {limit}s)"


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    title, limit, ok, elapsed, msg, extra = evaluate(number)
    with capsys.disabled():
        print("\n" + _line(number, title, limit, ok, elapsed, msg))
        if number == 7:
            for d in extra:
                print("    " + d)
    assert ok, msg


if __name__ == "__main__":
    results = []
    for n in range(1, 11):
        title, limit, ok, elapsed, msg, extra = evaluate(n)
        print(_line(n, title, limit, ok, elapsed, msg))
        if n == 7:
            for d in extra:
                print("    " + d)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
