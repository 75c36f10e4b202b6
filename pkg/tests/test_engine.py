import random
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from padwhit.characters import (
    ExtendedCharacter,
    characters_mod,
    make_character,
)
from padwhit.engine import (
    Mat2,
    Representative,
    TruncationError,
    atkin_lehner_reduce,
    coefficient_table,
    conjugate_value,
    contragredient_of,
    decompose_matrix,
    default_t_max,
    lambda_norm,
    lambda_sq_sum,
    lower_bound_witness,
    reduce_matrix,
    sup_norm,
    supercuspidal_closed_value,
    tables_for_level,
    theorem_refs,
    whittaker_value,
)
from padwhit.numerics import ONE, MINUS_ONE, RootOfUnity
from padwhit.padics import PAdicApprox, psi_eval, unit_group
from padwhit.representations import (
    PrincipalSeries,
    SteinbergTwist,
    standard_family,
    trivial_character,
)
from padwhit.verify import synthetic_oracle

TOL = mpf("1e-12")
TOL_PT = mpf("1e-15")


def ext(p, a, exps, piv=ONE):
    return ExtendedCharacter(make_character(p, a, exps), piv)


def small_reps():
    return [
        PrincipalSeries(ext(3, 1, [1]), ext(3, 0, [])),
        PrincipalSeries(ext(3, 2, [1]), ext(3, 0, [])),
        PrincipalSeries(ext(3, 2, [1]), ext(3, 1, [1])),
        PrincipalSeries(ext(2, 2, [1]), ext(2, 0, [])),
        PrincipalSeries(ext(5, 1, [1], RootOfUnity(1, 2)),
                        ext(5, 0, [], RootOfUnity(1, 2))),
        SteinbergTwist(ext(3, 0, [])),
        SteinbergTwist(ext(3, 0, [], MINUS_ONE)),
        SteinbergTwist(ext(3, 1, [1])),
        SteinbergTwist(ext(2, 2, [1])),
    ]


def normalization_target(rep):
    p, n = rep.p, rep.n
    om = rep.omega.eval_unit(-1 % p ** max(rep.m, 1)).embed()
    return om * psi_eval(PAdicApprox(p, -n, -1, rep.working_exponent)).embed()


@pytest.mark.parametrize("rep", small_reps(), ids=lambda r: r.spec_string())
def test_normalization_identity_coset(rep):
    r = Representative(-2 * rep.n, rep.n, 1)
    want = normalization_target(rep)
    assert abs(whittaker_value(rep, r, direct=True) - want) < TOL
    assert abs(whittaker_value(rep, r) - want) < TOL  # Atkin-Lehner route


def test_identity_coset_value_example():
    # p=3, quadratic chi1, trivial chi2: the identity coset value is
    # omega(-1/3) psi(-1/3) = -exp(-2 pi i / 3).
    rep = PrincipalSeries(ext(3, 1, [3]), ext(3, 0, []))
    got = whittaker_value(rep, Representative(-2, 1, 1))
    want = -mp.expjpi(mpf(-2) / 3)
    assert abs(got - want) < TOL


def test_corner_modulus_one():
    for rep in small_reps():
        n = rep.n
        val = whittaker_value(rep, Representative(-n, 0, -1 % rep.p))
        assert abs(abs(val) - 1) < TOL
        valc = conjugate_value(rep, Representative(-n, 0, -1 % rep.p))
        assert abs(abs(valc) - 1) < TOL


@pytest.mark.parametrize("rep", small_reps()[:4], ids=lambda r: r.spec_string())
def test_support_vanishing(rep):
    n = rep.n
    for k in range(n + 1):
        kn = max(min(k, n - k), 1)
        for delta in (1, 2, 3):
            t = -k - n - delta
            for v in unit_group(rep.p, kn).units()[:3]:
                assert abs(whittaker_value(rep, Representative(t, k, v),
                                           direct=True)) < TOL_PT


def test_explicit_tmax_guard():
    rep = small_reps()[0]
    with pytest.raises(TruncationError):
        whittaker_value(rep, Representative(99, 0, 1), t_max=10)
    # without an explicit bound the tables auto-extend
    val = whittaker_value(rep, Representative(default_t_max(rep) + 3, 0, 1))
    assert abs(val) < 1


def _random_triples(rep, count, seed):
    rng = random.Random(seed)
    n, p = rep.n, rep.p
    out = []
    for _ in range(count):
        k = rng.randint(0, n)
        t = rng.randint(-k - n - 1, n + 3)
        kn = max(min(k, n - k), 1)
        out.append(Representative(t, k, rng.choice(unit_group(p, kn).units())))
    return out


@pytest.mark.parametrize("rep", small_reps(), ids=lambda r: r.spec_string())
def test_atkin_lehner_phase_identity(rep):
    for r in _random_triples(rep, 40, seed=13):
        phase, reduced, dual = atkin_lehner_reduce(rep, r)
        assert abs(abs(phase) - 1) < TOL
        lhs = whittaker_value(rep, r, direct=True)
        rhs = phase * whittaker_value(dual, reduced, direct=True)
        assert abs(lhs - rhs) < TOL


@pytest.mark.parametrize("rep", small_reps()[:5], ids=lambda r: r.spec_string())
def test_conjugate_modulus_mirror(rep):
    n, p = rep.n, rep.p
    for r in _random_triples(rep, 25, seed=17):
        lhs = abs(conjugate_value(rep, r))
        mirrored = Representative(r.t + 2 * r.k - n, n - r.k,
                                  (-r.v) % p ** max(n - r.k, 1))
        rhs = abs(whittaker_value(rep, mirrored, direct=True))
        assert abs(lhs - rhs) < TOL


def test_conjugate_equals_plain_when_omega_trivial():
    rep = PrincipalSeries(ext(3, 2, [1]), ext(3, 2, [5]))
    assert rep.m == 0
    for r in _random_triples(rep, 20, seed=23):
        assert abs(conjugate_value(rep, r) - whittaker_value(rep, r)) < TOL


def test_single_support_closed_form_one_ramified():
    # One ramified inducing character, level k >= 1: every column is
    # supported at t = -k - n alone, with value
    # zeta(1) chi2(p^-k) q^(-k/2) mu(-1) eps(1/2, (mu chi1)^-1).
    p = 3
    piv = RootOfUnity(1, 4)
    chi1, chi2 = ext(p, 2, [1], piv), ext(p, 0, [], piv.inverse())
    rep = PrincipalSeries(chi1, chi2)
    n = rep.n
    zeta1 = mpf(p) / (p - 1)
    for k in range(1, n // 2 + 1):
        for mu in characters_mod(p, k):
            tab = coefficient_table(rep, k, mu)
            support = [t for t, c in tab.coeffs.items() if abs(c) > TOL_PT]
            assert support == [-k - n]
            tw_inv = chi1.twist(mu).inverse()
            want = (
                zeta1
                * (chi2.pi_value ** (-k)).embed()
                * mp.power(p, -mpf(k) / 2)
                * mu.at_minus_one().embed()
                * tw_inv.epsilon()
            )
            got = tab.value(-k - n)
            assert abs(got - want) < TOL


def test_level_zero_column_geometric_closed_form():
    # At k = 0 the single (trivial) column is the diagonal in disguise:
    # c[t,0] = omega(-1) eps(1/2, pi)^-1 (chi2(p))^(t+n) q^-(t+n)/2.
    p = 3
    piv = RootOfUnity(1, 4)
    chi1, chi2 = ext(p, 2, [1], piv), ext(p, 0, [], piv.inverse())
    rep = PrincipalSeries(chi1, chi2)
    n = rep.n
    td = rep.twist_data(trivial_character(p))
    tab = coefficient_table(rep, 0, trivial_character(p))
    for t in range(-n, 6):
        want = (
            rep.omega.at_minus_one().embed() / td.eps
            * (chi2.pi_value ** (t + n)).embed()
            * mp.power(p, -mpf(t + n) / 2)
        )
        assert abs(tab.value(t) - want) < TOL


def test_single_support_closed_form_trivial_lfactor():
    # Both inducing characters ramified and mu generic: single support at
    # t = -a(mu chi1) - a(mu chi2), value omega(-1) G(p^-k, mu^-1) /
    # (eps(1/2, mu chi1) eps(1/2, mu chi2)).
    from padwhit.characters import gauss_sum_closed

    for p in (3, 5):
        chi1 = ext(p, 1, [1])
        chi2 = ext(p, 1, [p - 2]) if p == 5 else ext(p, 1, [1])
        rep = PrincipalSeries(chi1, chi2)
        n = rep.n
        for k in range(n // 2 + 1):
            for mu in characters_mod(p, k):
                tw1 = chi1.twist(mu)
                tw2 = chi2.twist(mu)
                if tw1.conductor == 0 or tw2.conductor == 0:
                    continue  # non-generic classes
                tab = coefficient_table(rep, k, mu)
                support = [t for t, c in tab.coeffs.items() if abs(c) > TOL_PT]
                t0 = -tw1.conductor - tw2.conductor
                x = PAdicApprox(p, -k, 1, max(k, 1))
                gv = gauss_sum_closed(x, mu.inverse())
                if abs(gv) < TOL_PT:
                    assert support == []
                    continue
                assert support == [t0]
                want = rep.omega.at_minus_one().embed() * gv / (
                    tw1.epsilon() * tw2.epsilon()
                )
                assert abs(tab.value(t0) - want) < TOL_PT


def test_column_vanishes_below_support():
    rep = small_reps()[1]
    n = rep.n
    for k in range(n + 1):
        for mu in characters_mod(rep.p, k):
            tab = coefficient_table(rep, k, mu)
            assert abs(tab.value(-k - n - 1)) < TOL_PT


def test_high_conductor_column_empty():
    rep = small_reps()[0]
    mu = characters_mod(3, 2)[-1]
    assert mu.conductor == 2
    tab = coefficient_table(rep, 1, mu)
    assert tab.coeffs == {}


def test_parseval_two_ways():
    rep = PrincipalSeries(ext(3, 2, [1]), ext(3, 1, [1]))
    n, p = rep.n, rep.p
    for k in range(n // 2 + 1):
        tabs = tables_for_level(rep, k, default_t_max(rep))
        units = unit_group(p, k).units()
        support = sorted({t for tab in tabs for t in tab.coeffs})
        for t in support[:8]:
            parseval = sum((abs(tab.value(t)) ** 2 for tab in tabs), mpf(0))
            direct = sum(
                (abs(whittaker_value(rep, Representative(t, k, v))) ** 2
                 for v in units),
                mpf(0),
            ) / len(units)
            assert abs(parseval - direct) < TOL_PT
            assert abs(lambda_norm(rep, t, k) - mp.sqrt(parseval)) < TOL_PT


@pytest.mark.parametrize("rep", small_reps(), ids=lambda r: r.spec_string())
def test_lambda_sum_window(rep):
    for k in range(rep.n // 2 + 1):
        total, tail = lambda_sq_sum(rep, k)
        assert total + tail > 1 - mpf("1e-6")
        assert total < 2 + mpf("1e-6")
        if rep.has_trivial_lfactor:
            assert abs(total - 1) < mpf("1e-6")


def test_lambda_sum_closed_forms_at_level_zero():
    # Direct diagonal identities: the level-0 norm sums are zeta(2), zeta(1),
    # and 1 for the Steinberg / one-ramified / trivial-L types.
    st = SteinbergTwist(ext(3, 0, []))
    total, _ = lambda_sq_sum(st, 0)
    assert abs(total - mpf(9) / 8) < mpf("1e-9")
    ps = PrincipalSeries(ext(3, 2, [1]), ext(3, 0, []))
    total, _ = lambda_sq_sum(ps, 0)
    assert abs(total - mpf(3) / 2) < mpf("1e-9")


def test_lambda_level_symmetry():
    rep = PrincipalSeries(ext(3, 2, [1]), ext(3, 1, [1]))
    dual = contragredient_of(rep)
    n = rep.n
    for k in range(n // 2 + 1):
        for t in range(-k - n, 4):
            a = lambda_norm(rep, t, k)
            b = lambda_norm(dual, t + 2 * k - n, n - k)
            assert abs(a - b) < TOL


def test_sup_norm_steinberg_is_one():
    res = sup_norm(SteinbergTwist(ext(5, 0, [])))
    assert abs(res.h - 1) < mpf("1e-10")
    assert res.certified


def test_sup_norm_templier_case():
    rep = PrincipalSeries(ext(3, 2, [1]), ext(3, 0, []))
    res = sup_norm(rep)
    assert abs(res.h - mp.sqrt(3)) < mpf("1e-12")
    lower, upper = theorem_refs(rep)
    assert mpf(2) / 3 * lower <= res.h <= mp.sqrt(2) * upper
    assert res.witness == Representative(-3, 1, 1)
    assert res.certified


def test_sup_norm_sqrt2_bound_family():
    for rep in standard_family(3, 3):
        res = sup_norm(rep)
        assert res.h <= mp.sqrt(2) * mp.power(3, mpf(rep.n // 2) / 2) + mpf("1e-12")
        assert res.h >= 1 - mpf("1e-12")


def test_sup_norm_deterministic_witness():
    rep = PrincipalSeries(ext(3, 2, [1]), ext(3, 1, [1]))
    r1 = sup_norm(rep)
    r2 = sup_norm(rep)
    assert (r1.h, r1.witness, r1.certified) == (r2.h, r2.witness, r2.certified)


def test_lower_bound_witness_examples():
    rep = PrincipalSeries(ext(3, 2, [1]), ext(3, 0, []))
    w = lower_bound_witness(rep)
    assert w == Representative(-3, 1, 1)
    val = abs(whittaker_value(rep, w, direct=True))
    assert val >= mpf(2) / 3 * mp.power(3, mpf(3 * rep.m // 2) / 2 - mpf(rep.n) / 2)
    # guard: needs cond(chi1) > 2 cond(chi2)
    balanced = PrincipalSeries(ext(3, 1, [1]), ext(3, 1, [1]))
    with pytest.raises(ValueError):
        lower_bound_witness(balanced)
    with pytest.raises(ValueError):
        lower_bound_witness(SteinbergTwist(ext(3, 0, [])))


def test_lower_bound_witness_positive_a2():
    rep = PrincipalSeries(ext(3, 3, [1]), ext(3, 1, [1]))
    w = lower_bound_witness(rep)
    a1 = rep.chi1.conductor
    assert (w.t, w.k) == (-(3 * a1 // 2), a1 // 2)
    val = abs(whittaker_value(rep, w, direct=True))
    ref = mp.power(3, mpf(3 * rep.m // 2) / 2 - mpf(rep.n) / 2)
    assert val >= mpf(2) / 3 * ref


def test_supercuspidal_k0_column_and_closed_form():
    sc = synthetic_oracle(3, 3, make_character(3, 1, [1]), seed=12)
    n = sc.n
    eps_dual = sc.twist_data(sc.omega.inverse()).eps
    for t in range(-n - 2, 2):
        got = whittaker_value(sc, Representative(t, 0, 1))
        if t == -n:
            assert abs(got - eps_dual) < TOL_PT
            assert abs(abs(got) - 1) < TOL_PT
        else:
            assert abs(got) < TOL_PT
    rng = random.Random(2)
    for k in range(n + 1):
        for t in range(-2 * n - 2, 1):
            kn = max(min(k, n - k), 1)
            v = rng.choice(unit_group(3, kn).units())
            got = whittaker_value(sc, Representative(t, k, v), direct=True)
            want = supercuspidal_closed_value(sc, Representative(t, k, v))
            assert abs(got - want) < TOL_PT


def test_supercuspidal_sup_norm_certified():
    sc = synthetic_oracle(5, 2, seed=9)
    res = sup_norm(sc)
    assert res.certified
    assert res.h >= 1 - mpf("1e-12")


def test_reduce_matrix_examples():
    rep = PrincipalSeries(ext(3, 2, [1]), ext(3, 0, []))
    n = rep.n
    # identity: the representative is the identity coset and the reconstructed
    # value is exactly W(1) = 1.
    g = Mat2.from_rationals(3, [1, 0, 0, 1], 12)
    psi_ph, om_ph, r = reduce_matrix(rep, g)
    assert r == Representative(-2 * n, n, 1)
    val = psi_ph.embed() * om_ph.embed() * whittaker_value(rep, r, direct=True)
    assert abs(val - 1) < TOL
    # the Weyl element lands in the (0,0,1) coset with trivial phases
    g = Mat2.from_rationals(3, [0, 1, -1, 0], 12)
    psi_ph, om_ph, r = reduce_matrix(rep, g)
    assert r == Representative(0, 0, 1)
    assert psi_ph == RootOfUnity(0, 1) and om_ph == RootOfUnity(0, 1)
    # integral unipotent absorbs into the level subgroup
    g = Mat2.from_rationals(3, [1, 7, 0, 1], 12)
    psi_ph, om_ph, r = reduce_matrix(rep, g)
    assert r == Representative(-2 * n, n, 1)
    val = psi_ph.embed() * om_ph.embed() * whittaker_value(rep, r, direct=True)
    assert abs(val - 1) < TOL


def test_reduce_matrix_roundtrip_random():
    p = 3
    rep = PrincipalSeries(ext(p, 2, [1]), ext(p, 1, [1]))
    n = rep.n
    pn = p**n
    rng = random.Random(5)
    for _ in range(30):
        t = rng.randint(-5, 2)
        k = rng.randint(0, n)
        v = rng.choice([u for u in range(1, pn) if u % p])
        u = rng.choice([1, 2, 4, 5])
        x = Fraction(rng.randint(-8, 8), 3 ** rng.randint(0, 2))
        a_, b_, c_, d_ = (
            Fraction(0), Fraction(3) ** t, Fraction(-1), -Fraction(3) ** (-k) * v,
        )
        a_, b_ = a_ + x * c_, b_ + x * d_
        a_, b_, c_, d_ = u * a_, u * b_, u * c_, u * d_
        ka, kb, kc, kd = 1 + pn * rng.randint(-1, 1), rng.randint(-2, 2), \
            pn * rng.randint(-1, 1), rng.choice([1, 2, 4, 5, 7, 8])
        g = Mat2.from_rationals(
            p,
            [a_ * ka + b_ * kc, a_ * kb + b_ * kd,
             c_ * ka + d_ * kc, c_ * kb + d_ * kd],
            18,
        )
        psi_ph, om_ph, r2 = reduce_matrix(rep, g)
        lhs = psi_ph.embed() * om_ph.embed() * whittaker_value(rep, r2, direct=True)
        px = psi_eval(PAdicApprox.from_rational(p, x, 12)) if x else RootOfUnity(0, 1)
        rhs = px.embed() * rep.omega.eval_unit(u).embed() \
            * whittaker_value(rep, Representative(t, k, v), direct=True)
        assert abs(lhs - rhs) < mpf("1e-20")


def test_decompose_matrix_rejects_singular():
    # An exactly singular matrix is indistinguishable from one whose
    # determinant sits below the working precision; either error is correct.
    from padwhit.padics import PrecisionError

    with pytest.raises((ValueError, PrecisionError)):
        decompose_matrix(Mat2.from_rationals(3, [1, 1, 1, 1], 8), 1)


def test_representative_domain_guards():
    rep = small_reps()[0]
    with pytest.raises(ValueError):
        whittaker_value(rep, Representative(0, rep.n + 1, 1))
    with pytest.raises(ValueError):
        whittaker_value(rep, Representative(0, 0, rep.p))
