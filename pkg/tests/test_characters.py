import random

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpc, mpf

from padwhit.characters import (
    ExtendedCharacter,
    characters_mod,
    conductor_product,
    critical_unit,
    epsilon_factor,
    format_char,
    gauss_sum,
    gauss_sum_closed,
    make_character,
    parse_char,
    parse_unit_char,
    perturb_epsilon,
    verify_critical_unit,
)
from padwhit.numerics import ONE, RootOfUnity, approx_equal
from padwhit.padics import PAdicApprox, unit_group

TOL = mpf("1e-20")


def quad3():
    return make_character(3, 1, [1])


def test_conductor_examples():
    assert make_character(3, 2, [3]).conductor == 1
    assert make_character(3, 2, [1]).conductor == 2
    assert make_character(3, 1, [0]).conductor == 0


def _brute_conductor(p, level, values):
    """Smallest c with triviality on the image of 1 + p^c Z_p."""
    mod = p**level
    for c in range(level + 1):
        if all(values(u) == ONE for u in range(1, mod)
               if u % p and (u - 1) % p**c == 0):
            return c
    return level


def test_conductor_is_exact():
    for p, a_max in [(2, 5), (3, 4), (5, 3)]:
        for chi in characters_mod(p, a_max):
            assert chi.conductor == _brute_conductor(p, a_max, chi.eval_unit)


def test_char_eval_examples():
    assert quad3().eval_unit(2) == RootOfUnity(1, 2)
    assert make_character(5, 0, []).eval_unit(3) == ONE
    assert make_character(3, 2, [1]).eval_unit(4) == RootOfUnity(1, 3)


def test_char_eval_multiplicative():
    rng = random.Random(3)
    for p, a in [(3, 3), (5, 2), (2, 4)]:
        units = unit_group(p, a).units()
        for chi in characters_mod(p, a)[: 6]:
            for _ in range(30):
                u, v = rng.choice(units), rng.choice(units)
                assert chi.eval_unit(u) * chi.eval_unit(v) == chi.eval_unit(
                    u * v % p**a
                )


def test_conductor_product_examples():
    q = quad3()
    assert conductor_product(q, q) == 0
    mu = make_character(3, 2, [1])
    assert conductor_product(mu, q) == 2
    triv = make_character(3, 0, [])
    assert conductor_product(triv, mu) == mu.conductor


def test_conductor_product_brute():
    # Product conductor agrees with a direct triviality scan.
    for p in (3, 5):
        chars = characters_mod(p, 2)
        for mu in chars:
            for nu in chars[:5]:
                want = _brute_conductor(
                    p, 2, lambda u: mu.eval_unit(u) * nu.eval_unit(u)
                )
                assert (mu * nu).conductor == want


def test_character_group_counts():
    for p, k in [(2, 1), (2, 3), (3, 2), (5, 2), (7, 1)]:
        chars = characters_mod(p, k)
        expected = unit_group(p, k).size
        assert len(chars) == expected
        assert len(set(chars)) == expected


def test_gauss_sum_examples():
    triv = make_character(3, 0, [])
    x = PAdicApprox(3, 1, 1, 4)
    assert approx_equal(gauss_sum(x, triv), 1, TOL)
    x = PAdicApprox(3, -1, 1, 4)
    assert approx_equal(gauss_sum(x, triv), mpf(-1) / 2, TOL)
    got = gauss_sum(x, quad3())
    assert approx_equal(got, mpc(0, mp.sqrt(3) / 2), TOL)
    x = PAdicApprox(3, -2, 1, 4)
    assert abs(gauss_sum(x, quad3())) < TOL


def test_gauss_sum_matches_closed_form_small_family():
    for p in (2, 3, 5):
        for mu in characters_mod(p, 2):
            for t in range(-3, 2):
                for u in (1, p + 1 if (p + 1) % p else p + 2):
                    x = PAdicApprox(p, t, u, max(4, -t + 1))
                    assert abs(gauss_sum(x, mu) - gauss_sum_closed(x, mu)) < TOL


def test_epsilon_examples():
    assert approx_equal(epsilon_factor(quad3()), mpc(0, 1), TOL)
    assert approx_equal(epsilon_factor(make_character(3, 0, [])), 1, TOL)
    e = epsilon_factor(quad3()) * epsilon_factor(quad3().inverse())
    assert approx_equal(e, quad3().at_minus_one().embed(), TOL)
    assert approx_equal(e, -1, TOL)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_epsilon_unit_modulus_and_duality(p):
    for mu in characters_mod(p, 3):
        e = epsilon_factor(mu)
        assert abs(abs(e) - 1) < TOL
        assert abs(e * epsilon_factor(mu.inverse()) - mu.at_minus_one().embed()) < TOL


def test_critical_unit_examples():
    chi = make_character(3, 2, [1])
    assert critical_unit(chi) % 3 == 1
    assert verify_critical_unit(chi, critical_unit(chi))
    assert critical_unit(quad3()) == 1  # r0 = 0: vacuous class
    for chi in characters_mod(5, 2):
        if chi.conductor != 2:
            continue
        v0 = critical_unit(chi)
        assert verify_critical_unit(chi, v0)
        # uniqueness of the class mod 5
        others = [v for v in range(1, 5) if v != v0 % 5]
        assert all(not verify_critical_unit(chi, v) for v in others)


def test_pair_sum_spot_values():
    # p=3, levels (r, r') = (2, 1): the pair sum has magnitude
    # zeta(1)^-1 q^(r - r'/2) = 2 sqrt(3) exactly on -1 + 3*(units) mod 9,
    # and vanishes elsewhere (including v = -1 itself).
    from padwhit.verify import pair_sum

    chi = quad3()
    mag = (1 - mpf(1) / 3) * mp.power(3, 2 - mpf(1) / 2)
    assert approx_equal(mag, 2 * mp.sqrt(3), mpf("1e-30"))
    for v in (2, 5):
        assert abs(abs(pair_sum(3, 2, chi, v)) - mag) < mpf("1e-18")
    for v in (1, 4, 7, 8):
        assert abs(pair_sum(3, 2, chi, v)) < mpf("1e-18")


def test_extended_character_eval_and_epsilon():
    unit = make_character(3, 1, [1])
    chi = ExtendedCharacter(unit, RootOfUnity(1, 4))
    x = PAdicApprox(3, 2, 2, 3)
    assert chi.eval(x) == RootOfUnity(1, 4) ** 2 * RootOfUnity(1, 2)
    # unramified shift: eps picks up pi-value^conductor
    assert approx_equal(chi.epsilon(), mpc(0, 1) * epsilon_factor(unit), TOL)
    unram = ExtendedCharacter(make_character(3, 0, []), RootOfUnity(1, 2))
    assert approx_equal(unram.epsilon(), 1, TOL)
    assert unram.satake() == RootOfUnity(1, 2)
    assert chi.satake() is None


def test_char_grammar_roundtrip():
    for text in ["3^2:1@0/1", "3^0:0@0/1", "2^3:1,1@1/2", "5^1:3@2/3"]:
        chi = parse_char(text)
        again = parse_char(format_char(chi))
        assert again == chi
    assert parse_char("3^1:3@0/1").unit_part == quad3()  # exponents reduce


def test_char_grammar_errors():
    with pytest.raises(ValueError):
        parse_char("3^2")
    with pytest.raises(ValueError):
        parse_char("4^1:1")  # 4 not prime
    with pytest.raises(ValueError):
        parse_char("2^3:1")  # needs two exponents
    with pytest.raises(ValueError):
        parse_char("3^1:1@1/2", p_expect=5)
    with pytest.raises(ValueError):
        parse_unit_char("3^1:1@1/2")  # nontrivial value at p


@given(st.sampled_from([2, 3, 5]), st.integers(-3, 1), st.integers(0, 40))
def test_gauss_sum_unit_scaling_covariance(p, t, seed):
    # G(u x, mu) = mu(u)^-1 G(x, mu): substitute y -> u^-1 y in the average.
    rng = random.Random(seed)
    units = unit_group(p, 3).units()
    u = rng.choice(units)
    mu = rng.choice(characters_mod(p, 2))
    x = PAdicApprox(p, t, 1, 5)
    ux = PAdicApprox(p, t, u, 5)
    lhs = gauss_sum(ux, mu)
    rhs = mu.eval_unit(u).inverse().embed() * gauss_sum(x, mu)
    assert abs(lhs - rhs) < TOL


@given(st.sampled_from([3, 5]), st.integers(0, 10**6))
def test_character_inverse_cancels(p, seed):
    rng = random.Random(seed)
    mu = rng.choice(characters_mod(p, 3))
    prod = mu * mu.inverse()
    assert prod.conductor == 0
    assert prod.is_trivial()


def test_perturbation_hook():
    base = epsilon_factor(quad3())
    with perturb_epsilon(1e-6):
        assert abs(epsilon_factor(quad3()) - base) > mpf("1e-7")
    assert approx_equal(epsilon_factor(quad3()), base, mpf("1e-30"))
