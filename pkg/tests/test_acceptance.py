"""Acceptance gate: seven criteria, one pass/fail line each.

Every check is exact (Fraction arithmetic end to end); the runtime budgets
are part of the criteria and are asserted, not aspirational.  Run with -s to
see the lines as they print; under plain pytest the test names carry the
same information.
"""

import json
import random
import time
from fractions import Fraction

from spcover import cli, monodromy, picard, spectral
from spcover.exactalg import MultiPoly
from spcover.monodromy import Permutation


def _verdict(name, ok, elapsed, budget):
    status = "PASS" if ok and elapsed < budget else "FAIL"
    print(f"ACCEPTANCE {name}: {status} ({elapsed:.2f}s of {budget:.0f}s budget)")
    assert ok, f"{name}: checks failed"
    assert elapsed < budget, f"{name}: {elapsed:.2f}s over the {budget:.0f}s budget"


def test_criterion_1_symbolic_factorization():
    """disc P = (-4)^n Q_2n Delta^2 for n = 1..4, exactly, under 120 s cold."""
    spectral._symbolic_factorization.cache_clear()
    start = time.monotonic()
    ok = True
    for n in (1, 2, 3, 4):
        fact = spectral.factorize_discriminant(n)
        data = spectral.SpectralData.symbolic(n)
        ok = ok and abs(fact.constant) == Fraction(4) ** n
        ok = ok and fact.constant == Fraction(-4) ** n
        ok = ok and fact.w == fact.constant * data.Q[2 * n] * fact.delta * fact.delta
        rep = spectral.scaling_action(n)
        ok = ok and rep.all_ok
    _verdict("factorization", ok, time.monotonic() - start, 120.0)


def test_criterion_2_hamiltonian_char_polys():
    """500 seeded Hamiltonians (100 per n = 1..5): even, monic, under 10 s."""
    rng = random.Random(0)
    start = time.monotonic()
    ok = True
    for n in range(1, 6):
        for _ in range(100):
            h = spectral.random_hamiltonian(n, rng)
            p, data = spectral.char_poly_hamiltonian(h)
            ok = ok and p.degree == 2 * n and p.is_monic()
            ok = ok and all(p.coefficient(k).is_zero() for k in range(1, 2 * n, 2))
    _verdict("char-poly-evenness", ok, time.monotonic() - start, 10.0)


def test_criterion_3_cover_numerology():
    """Counts, genus, degree tables, and the odd-parity flag, under 1 s."""
    start = time.monotonic()
    ok = True
    for n in range(1, 11):
        for g in range(2, 11):
            c = spectral.cover_numerics(n, g)
            ok = ok and c.total_zeros == 4 * n * n * (g - 1)
            ok = ok and c.genus_hat == (2 * n) ** 2 * (g - 1) + 1
            ok = ok and sum(c.component_degrees[:1] + c.component_degrees[2:]) == c.component_degrees[1]
    for group, start_rank in (("A", 1), ("B", 1), ("C", 1), ("D", 2), ("Sp", 1), ("GL", 1)):
        for rank in range(start_rank, 11):
            ok = ok and spectral.dims_and_degrees(group, rank, 2).sum_rule_ok
    ok = ok and spectral.riemann_hurwitz(2, 2, [2]).genus is None
    ok = ok and spectral.dims_and_degrees("Sp", 4, 3).moduli_dim == 4 * 9 * 2
    _verdict("numerology", ok, time.monotonic() - start, 1.0)


def test_criterion_4_monodromy_census():
    """All collisions for n <= 6: counts, one orbit per class, under 30 s."""
    start = time.monotonic()
    ok = True
    for n in range(1, 7):
        census = monodromy.enumerate_all_merges(n)
        ok = ok and census.excluded_ordered == n * (n - 1)
        ok = ok and census.one_orbit_per_label
        if n >= 2:
            ok = ok and census.fiber_sizes["ac"] == 2 * n - 3
    q = monodromy.LocalMonodromy.qzero(1, 1)
    v = monodromy.classify_merge(q, q)
    ok = ok and v.label == "b" and v.rh_consistent is False
    qz = [Permutation.parse(4, "(1 2)"), Permutation.parse(4, "(3 4)")] * 4
    dz = [Permutation.parse(4, "(1 3)(2 4)"), Permutation.parse(4, "(1 4)(2 3)")] * 4
    handles = [(Permutation.identity(4), Permutation.identity(4))] * 2
    ok = ok and monodromy.validate_global_monodromy(2, 2, qz, dz, handles).ok
    _verdict("monodromy-census", ok, time.monotonic() - start, 30.0)


def test_criterion_5_stratum_multiplicities():
    """Shipped fixtures: b,bm,bb at order 1, mm at 2, cc at 3, ac at 2, under 5 s."""
    start = time.monotonic()
    ok = True
    for label, expected in spectral.EXPECTED_STRATUM_ORDERS.items():
        rep = spectral.shipped_fixture_report(label)
        ok = ok and rep.order == expected
    ac = spectral.shipped_fixture_report("ac")
    ok = ok and any("set-theoretic" in note for note in ac.notes)
    mm = spectral.shipped_fixture_report("mm")
    ok = ok and any("Res(f,g)^2" in note for note in mm.notes)
    _verdict("stratum-multiplicities", ok, time.monotonic() - start, 5.0)


def test_criterion_6_picard_identities():
    """Decomposition, kappa forms, coarse identity, grid n,g <= 12, under 5 s."""
    start = time.monotonic()
    ok = picard.star_decomposition_check().all_ok
    ok = ok and picard.kappa_forms().all_equal
    ok = ok and picard.kappa_value(1) == Fraction(5, 36)
    ok = ok and picard.kappa_value(2) == Fraction(19, 728)
    ok = ok and picard.coarse_identity_check().all_ok
    ok = ok and picard.gl_star_check()
    for n in range(1, 13):
        for g in range(2, 13):
            ok = ok and picard.decomposition_numeric(n, g)
            ok = ok and picard.coarse_identity_numeric(n, g)
    _verdict("picard-identities", ok, time.monotonic() - start, 5.0)


def test_criterion_7_cli_contract(tmp_path, capsys):
    """Byte-identical reports, exit codes 0/1/2/3, report-only non-gating."""
    start = time.monotonic()
    ok = True

    text1 = cli.emit_report(cli.run_suite(seed=0), "text")
    text2 = cli.emit_report(cli.run_suite(seed=0), "text")
    json1 = cli.emit_report(cli.run_suite(seed=0), "json")
    json2 = cli.emit_report(cli.run_suite(seed=0), "json")
    ok = ok and text1 == text2 and json1 == json2

    reports = cli.run_suite(seed=0)
    ok = ok and any(r.status == "report-only" for r in reports)
    ok = ok and not any(r.status == "fail" for r in reports)

    ok = ok and cli.main(["--scope", "numerics"]) == 0
    ok = ok and cli.main(["--min-n", "3", "--max-n", "2"]) == 2
    ok = ok and cli.main(["--scope", "picard", "--out", str(tmp_path / "no" / "x")]) == 3

    x, t = MultiPoly.var("x"), MultiPoly.var("t")
    off = spectral.LocalFamily("b", 1, {2: x * x - t * t})
    path = tmp_path / "off.json"
    path.write_text(json.dumps(spectral.family_to_json(off)))
    ok = ok and cli.main(["--scope", "multiplicity", "--family", str(path)]) == 1

    capsys.readouterr()  # drain main()'s output so the verdict line survives
    _verdict("cli-contract", ok, time.monotonic() - start, 60.0)
