"""Smoke tests for the python extension."""

import pytest

import pgap


def test_sieve_basics():
    t = pgap.primes_up_to(100)
    assert t.count == 25
    assert t.limit == 100
    assert t.nth(25) == 97
    assert t.contains(97)
    assert not t.contains(91)
    assert t.primes()[:4] == [2, 3, 5, 7]
    assert pgap.pair_count_with_difference(pgap.primes_up_to(200), 100, 2) == 8


def test_sieve_errors():
    with pytest.raises(ValueError):
        pgap.primes_up_to(1)
    t = pgap.primes_up_to(100)
    with pytest.raises(pgap.InsufficientTableError):
        pgap.g_k(t, 1000, 2)


def test_golden_values():
    iv = pgap.euler_product_partial(5000)
    assert abs(iv.lo - 0.660175738989977) < 1e-12
    assert iv.lo <= iv.hi
    for report in pgap.appendix_reports():
        assert report.verified, report.name


def test_chain_and_tower():
    chain = pgap.verify_lemma1_chain()
    assert len(chain) == 8
    assert all(r.verified for r in chain)
    assert pgap.verify_tower_bound(3).verified
    with pytest.raises(ValueError):
        pgap.verify_tower_bound(2)


def test_sqfree():
    r = pgap.ruzsa_65()
    assert r.residues == [0, 15, 21, 27, 42, 48, 59]
    assert pgap.is_sdf_residue_set(r)
    assert pgap.squares_mod(5) == [0, 1, 4]
    assert pgap.is_sdf_residues(5, [0, 2])
    assert not pgap.is_sdf_residues(5, [0, 1])

    spec = pgap.DigitTupleSpec(5, 2, [0])
    elems = pgap.build_digit_set(spec, pgap.ResidueSet(5, [0, 2]))
    assert elems == [1, 3, 6, 8, 11, 13, 16, 18, 21, 23]

    size, witness, optimal = pgap.max_sdf_residues(5)
    assert size == 2 and optimal


def test_powertuple():
    targets = pgap.default_targets(3)
    result = pgap.solve_exponents(3, targets)
    assert result.a == {2: 1, 3: 5}
    assert pgap.verify_power_tuple(result, targets)
    admissible, witness = pgap.admissible_check_factored(pgap.tuple_offsets(result))
    assert admissible and witness is None

    not_adm, w = pgap.admissible_check([0, 2, 4])
    assert not not_adm and w == 3


def test_gapscan():
    t = pgap.primes_up_to(200)
    assert pgap.g_k(t, 30, 2) == 4
    assert pgap.square_diff_pairs(t, 0, 12) == [(2, 3), (2, 11), (3, 7), (7, 11)]
    rep = pgap.color_two(t, 30, 2.0)
    assert rep.red_count == 6 and rep.green_count == 4
    rep3 = pgap.color_three(t, 100, 2, 2.0)
    assert pgap.yellow_bound_check(rep3)
    w = pgap.first_sdf_run(t, 100, 3)
    assert w.primes == [23, 29, 31] and w.pairwise_ok


def test_program5():
    log10_w, exponent, primorial, first43 = pgap.program5_bounds()
    assert primorial == 614889782588491410
    assert abs(log10_w.lo - 17.7887972765829) < 1e-10
    assert first43 > 10**74
