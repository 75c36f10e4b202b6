"""Whittaker newvector engine.

Values are organized along the double-coset representatives
``g(t, k, v) = diag(p^t, 1) . w . n(p^-k v)`` with ``t`` an integer,
``0 <= k <= n`` and ``v`` a unit mod ``p^min(k, n-k)``; these exhaust the
group modulo the center, the unipotent upper triangulars, and the level
subgroup.  For each level ``k`` and unit character ``mu`` the function
``v -> W(g(t,k,v))`` has a Fourier coefficient ``c[t,k](mu)``, and the local
functional equation pins the generating function of ``t -> c[t,k](mu)`` as an
explicit rational function of X = q^-s.  The solver builds that rational
function in closed form (the diagonal data is finite plus geometric, with the
geometric part cancelling exactly against the matching dual Euler factor),
divides by the epsilon factor and the twisted Euler polynomial, and reads the
coefficients off one Taylor-Laurent expansion.

Columns with ``k > n/2`` are never solved directly in normal operation; they
reduce to the contragredient at ``n - k`` through the generalized
Atkin-Lehner relation.  The direct solve remains available behind
``direct=True`` precisely so the reduction can be tested against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp, mpc, mpf

from .characters import (
    UnitCharacter,
    characters_mod,
    epsilon_factor,
    zeta_value,
)
from .numerics import LaurentPoly, RationalFn, RootOfUnity, ONE, series_expand
from .padics import PAdicApprox, PrecisionError, psi_eval, unit_group
from .representations import Representation, trivial_character


class TruncationError(RuntimeError):
    """A value beyond the requested table depth was asked for explicitly."""


@dataclass(frozen=True)
class Representative:
    """Index triple of the coset representative diag(p^t,1) w n(p^-k v)."""

    t: int
    k: int
    v: int = 1


def default_t_max(rep: Representation) -> int:
    return 2 * rep.n + 20


def _zeta1(p: int) -> mpf:
    z = zeta_value(p, 1)
    return mpf(z.numerator) / z.denominator


@dataclass(frozen=True)
class TailBound:
    """Certified bound on trailing Fourier coefficients.

    For degrees ``d > d_from`` of the solved generating function,
    ``|theta_d| <= (a0 + a1 (d - d_from)) rho^(d - d_from)``, hence
    ``|c_t| <= bound(t)`` for ``t + A > d_from``.
    """

    a0: mpf
    a1: mpf
    rho: mpf
    d_from: int
    A: int
    q: int

    def coeff_bound(self, t: int) -> mpf:
        d = t + self.A
        if d <= self.d_from:
            raise ValueError("tail bound queried inside the computed range")
        s = d - self.d_from
        return (self.a0 + self.a1 * s) * self.rho**s * mp.power(self.q, -mpf(d) / 2)


class CoefficientTable:
    """Fourier coefficients ``t -> c[t,k](mu)`` of one unit character, plus a
    tail certificate for every ``t`` beyond the computed range."""

    __slots__ = ("k", "mu", "A", "coeffs", "tail", "t_max")

    def __init__(self, k: int, mu: UnitCharacter, A: int, coeffs: dict,
                 tail: TailBound, t_max: int):
        self.k = k
        self.mu = mu
        self.A = A
        self.coeffs = coeffs
        self.tail = tail
        self.t_max = t_max

    def value(self, t: int) -> mpc:
        return self.coeffs.get(t, mpc(0))

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def __repr__(self):
        return f"CoefficientTable(k={self.k}, mu={self.mu!r}, {len(self.coeffs)} coeffs)"


def _product(polys) -> LaurentPoly:
    out = LaurentPoly.one()
    for f in polys:
        out = out * f
    return out


def coefficient_table(rep: Representation, k: int, mu: UnitCharacter,
                      t_max: int | None = None) -> CoefficientTable:
    """Solve the functional-equation identity for the column (k, mu).

    Columns with cond(mu) > k are identically zero and come back empty.
    """
    n, p = rep.n, rep.p
    if not 0 <= k <= n:
        raise ValueError(f"level k={k} outside [0, {n}]")
    if t_max is None:
        t_max = default_t_max(rep)
    if mu.conductor > k:
        zero_tail = TailBound(mpf(0), mpf(0), mpf(0), -10**9, 0, p)
        return CoefficientTable(k, mu, 0, {}, zero_tail, t_max)

    td = rep.twist_data(mu)
    zeta1 = _zeta1(p)
    sqrt_q = mp.sqrt(mpf(p))
    omega_m1 = rep.omega.at_minus_one().embed()
    dual_factors = [LaurentPoly({0: 1, -1: -g / p}) for g in td.l_den]
    ratio = rep.diagonal_ratio()

    if mu.is_trivial():
        if ratio is None:
            g0 = mpc(1) if k == 0 else (mpc(-zeta1 / p) if k == 1 else mpc(0))
            num = LaurentPoly({0: g0}) * _product(dual_factors)
        else:
            rho = ratio / sqrt_q
            num = LaurentPoly.zero()
            if k >= 1:
                head = LaurentPoly({-(k - 1): (-zeta1 / p) * rho ** (k - 1)})
                num = num + head * _product(dual_factors)
            matches = [i for i, g in enumerate(td.l_den)
                       if abs(g / p - rho) < mpf("1e-25")]
            if len(matches) != 1:
                raise RuntimeError(
                    "no dual Euler factor cancels the geometric diagonal tail"
                )
            rest = _product(f for i, f in enumerate(dual_factors) if i != matches[0])
            num = num + LaurentPoly({-k: rho**k}) * rest
    else:
        r = mu.conductor
        a_star = k - r
        gval = zeta1 * mp.power(p, -mpf(r) / 2) * epsilon_factor(mu)
        if ratio is None:
            if a_star == 0:
                num = LaurentPoly({0: gval}) * _product(dual_factors)
            else:
                num = LaurentPoly.zero()
        else:
            rho = ratio / sqrt_q
            num = LaurentPoly({-a_star: rho**a_star * gval}) * _product(dual_factors)

    num = num.scale(omega_m1 / td.eps)
    if num.is_zero():
        zero_tail = TailBound(mpf(0), mpf(0), mpf(0), -10**9, td.A, p)
        return CoefficientTable(k, mu, td.A, {}, zero_tail, t_max)

    euler = _product(LaurentPoly({0: 1, 1: -a}) for a in td.l_num)
    theta = series_expand(RationalFn(num, euler), t_max + td.A)
    coeffs = {
        d - td.A: c * mp.power(p, -mpf(d) / 2)
        for d, c in theta.coeffs.items()
    }
    tail = _tail_certificate(theta, td, num.max_degree, t_max + td.A, p)
    return CoefficientTable(k, mu, td.A, coeffs, tail, t_max)


def _tail_certificate(theta: LaurentPoly, td, num_max_deg: int,
                      d_last: int, p: int) -> TailBound:
    """Bound trailing coefficients from the Euler-polynomial recurrence.

    Beyond the numerator degree, theta satisfies the linear recurrence whose
    characteristic roots are the Satake parameters (all of modulus <= 1), so
    its closed form is solvable from the trailing computed values.
    """
    roots = td.l_num
    if not roots:
        return TailBound(mpf(0), mpf(0), mpf(0), max(num_max_deg, d_last), td.A, p)
    t1 = theta[d_last]
    if len(roots) == 1:
        a = roots[0]
        _check_recurrence(theta, (a,), num_max_deg, d_last)
        return TailBound(abs(t1), mpf(0), abs(a), d_last, td.A, p)
    a1_, a2_ = roots
    t0 = theta[d_last - 1]
    rho = max(abs(a1_), abs(a2_))
    _check_recurrence(theta, (a1_, a2_), num_max_deg, d_last)
    if abs(a1_ - a2_) < mpf("1e-25"):
        # theta_d = (b0 + b1 d) a^d; solve from the last two values.
        a = a1_
        y0 = t0 / a ** (d_last - 1)
        y1 = t1 / a**d_last
        b1 = y1 - y0
        b0 = y1 - b1 * d_last
        amp0 = (abs(b0) + abs(b1) * abs(d_last)) * rho**d_last
        return TailBound(amp0, abs(b1) * rho**d_last, rho, d_last, td.A, p)
    det = a1_ ** (d_last - 1) * a2_**d_last - a2_ ** (d_last - 1) * a1_**d_last
    b1 = (t0 * a2_**d_last - t1 * a2_ ** (d_last - 1)) / det
    b2 = (t1 * a1_ ** (d_last - 1) - t0 * a1_**d_last) / det
    amp0 = abs(b1) * abs(a1_) ** d_last + abs(b2) * abs(a2_) ** d_last
    return TailBound(amp0, mpf(0), rho, d_last, td.A, p)


def _check_recurrence(theta: LaurentPoly, roots, num_max_deg: int, d_last: int):
    """The recurrence must reproduce the last computed coefficient."""
    order = len(roots)
    if d_last - order <= num_max_deg:
        return
    if order == 1:
        pred = roots[0] * theta[d_last - 1]
    else:
        s = roots[0] + roots[1]
        q = roots[0] * roots[1]
        pred = s * theta[d_last - 1] - q * theta[d_last - 2]
    scale = max(abs(theta[d_last]), abs(pred), mpf(1))
    if abs(pred - theta[d_last]) > scale * mpf("1e-25"):
        raise RuntimeError("trailing coefficients do not satisfy the recurrence")


@lru_cache(maxsize=None)
def contragredient_of(rep: Representation) -> Representation:
    return rep.contragredient()


@lru_cache(maxsize=None)
def _tables_for_level_at(rep: Representation, k: int, t_max: int,
                         prec: int) -> tuple:
    return tuple(
        coefficient_table(rep, k, mu, t_max) for mu in characters_mod(rep.p, k)
    )


def tables_for_level(rep: Representation, k: int, t_max: int) -> tuple:
    """Coefficient tables for every unit character of level <= k, cached per
    working precision."""
    return _tables_for_level_at(rep, k, t_max, mp.prec)


@lru_cache(maxsize=None)
def _char_values_on_units(p: int, k: int, prec: int):
    """(units, rows): rows[i][j] = (i-th character)(j-th unit) embedded."""
    chars = characters_mod(p, k)
    units = unit_group(p, k).units()
    rows = tuple(
        tuple(mu.eval_unit(v).embed() for v in units) for mu in chars
    )
    return units, rows


def _validate_rep_triple(rep: Representation, r: Representative) -> None:
    if not 0 <= r.k <= rep.n:
        raise ValueError(f"level index k={r.k} outside [0, {rep.n}]")
    if r.v % rep.p == 0:
        raise ValueError(f"v={r.v} is not a unit at p={rep.p}")


def whittaker_value(rep: Representation, r: Representative,
                    direct: bool = False, t_max: int | None = None) -> mpc:
    """Value of the normalized newvector at the representative ``r``.

    Fourier synthesis over the level-k character group when ``2k <= n`` (or
    when forced by ``direct``); otherwise one Atkin-Lehner reduction to the
    contragredient at level ``n - k``.
    """
    _validate_rep_triple(rep, r)
    n = rep.n
    if r.t < -r.k - n:
        return mpc(0)
    if t_max is not None and r.t > t_max:
        raise TruncationError(
            f"t={r.t} exceeds the requested table depth t_max={t_max}"
        )
    if 2 * r.k <= n or direct:
        eff = max(default_t_max(rep), r.t) if t_max is None else t_max
        total = mpc(0)
        for tab in tables_for_level(rep, r.k, eff):
            c = tab.value(r.t)
            if c != 0:
                total += c * tab.mu.eval_unit(r.v).embed()
        return total
    phase, reduced, dual = atkin_lehner_reduce(rep, r)
    return phase * whittaker_value(dual, reduced, t_max=t_max)


def conjugate_value(rep: Representation, r: Representative,
                    t_max: int | None = None) -> mpc:
    """Value of the opposite-invariance variant; equals the contragredient's
    newvector on every representative."""
    return whittaker_value(contragredient_of(rep), r, t_max=t_max)


def atkin_lehner_reduce(rep: Representation, r: Representative):
    """Phase and reduced triple with
    ``W(r) = phase * W~(g(t + 2k - n, n - k, -v))`` for the contragredient
    newvector W~; the phase has modulus 1."""
    _validate_rep_triple(rep, r)
    n, p = rep.n, rep.p
    dual = contragredient_of(rep)
    eps_dual = dual.twist_data(trivial_character(p)).eps
    phase_root = rep.omega.eval_unit(r.v).inverse()
    s = r.t + r.k
    if s < 0:
        mod = p**-s
        phase_root = phase_root * RootOfUnity(-pow(r.v, -1, mod), mod)
    k2 = n - r.k
    v2 = (-r.v) % (p ** max(k2, 1))
    reduced = Representative(r.t + 2 * r.k - n, k2, v2)
    return eps_dual * phase_root.embed(), reduced, dual


def lambda_norm(rep: Representation, t: int, k: int,
                t_max: int | None = None) -> mpf:
    """Square mean of |W(g(t,k,.))| over the units: by Parseval the l2 norm
    of the Fourier coefficients at (t, k)."""
    eff = t_max if t_max is not None else max(default_t_max(rep), t)
    total = mpf(0)
    for tab in tables_for_level(rep, k, eff):
        total += abs(tab.value(t)) ** 2
    return mp.sqrt(total)


def lambda_sq_sum(rep: Representation, k: int, t_max: int | None = None):
    """(sum over computed t of lambda^2, certified bound on the tail)."""
    if t_max is None:
        t_max = default_t_max(rep)
    tables = tables_for_level(rep, k, t_max)
    total = mpf(0)
    for tab in tables:
        for c in tab.coeffs.values():
            total += abs(c) ** 2
    tail = mpf(0)
    for tab in tables:
        for s in range(1, 400):
            b = tab.tail.coeff_bound(t_max + s)
            tail += b * b
            if b * b < mpf("1e-60"):
                break
    return total, tail


@dataclass(frozen=True)
class SupNormResult:
    h: mpf
    witness: Representative
    certified: bool
    lower_ref: mpf
    upper_ref: mpf
    t_max: int
    tail_bound: mpf = None  # certified sup of |W| beyond t_max


def theorem_refs(rep: Representation):
    """Reference magnitudes (lower, upper) the sup-norm is sandwiched by."""
    q = mpf(rep.p)
    lower = max(mp.power(q, mpf(3 * rep.m // 2) / 2 - mpf(rep.n) / 2), mpf(1))
    upper = mp.power(q, mpf(rep.n // 2) / 2)
    return lower, upper


def _dlog_key(p: int, k: int, v: int):
    group = unit_group(p, max(k, 0))
    if not group.generators:
        return ()
    return group.dlog(v % group.modulus)


def sup_norm(rep: Representation, t_max: int | None = None,
             tolerance=mpf("1e-9")) -> SupNormResult:
    """Certified maximum of |W| over the whole group.

    Scans levels k <= n/2 of the newvector and of its contragredient (the
    latter covers the levels above n/2 through the Atkin-Lehner symmetry),
    over the complete representative domain; the tail certificates of the
    coefficient tables bound everything beyond t_max.
    """
    n, p = rep.n, rep.p
    if t_max is None:
        t_max = default_t_max(rep)
    best = mpf(-1)
    cands: list[tuple] = []
    tail_sup = mpf(0)
    for fam, is_dual in ((rep, False), (contragredient_of(rep), True)):
        for k in range(n // 2 + 1):
            tables = tables_for_level(fam, k, t_max)
            units, rows = _char_values_on_units(p, k, mp.prec)
            chars = characters_mod(p, k)
            index = {mu: i for i, mu in enumerate(chars)}
            support = sorted({t for tab in tables for t in tab.coeffs})
            for t in support:
                if t < -k - n or t > t_max:
                    continue
                live = [(index[tab.mu], tab.value(t)) for tab in tables
                        if tab.value(t) != 0]
                if not live:
                    continue
                if len(live) == 1:
                    # A single character: |W| is the same for every v.
                    entries = [(abs(live[0][1]), units[0])]
                else:
                    entries = []
                    for j, v in enumerate(units):
                        w = mpc(0)
                        for i, c in live:
                            w += c * rows[i][j]
                        entries.append((abs(w), v))
                for value, v in entries:
                    if value > best:
                        best = value
                    if value > best - mpf("1e-22"):
                        cands.append((value, is_dual, t, k, v))
            tail_sup = max(tail_sup, _tail_sup_level(tables, t_max))
    cands = [c for c in cands if c[0] >= best - mpf("1e-22")]
    # Map candidates to coordinates of the primary newvector and tie-break.
    mapped = []
    for value, is_dual, t, k, v in cands:
        if is_dual:
            t2, k2 = t + 2 * k - n, n - k
            kn2 = min(k2, n - k2)
            v2 = (-v) % max(p**kn2, 2)
            if v2 == 0:
                v2 = 1
            mapped.append((k2, t2, _dlog_key(p, kn2, v2), v2, value))
        else:
            mapped.append((k, t, _dlog_key(p, min(k, n - k), v), v, value))
    mapped.sort(key=lambda e: (e[0], e[1], e[2]))
    k_w, t_w, _, v_w, h = mapped[0][0], mapped[0][1], mapped[0][2], mapped[0][3], best
    if h < 1 - tolerance:
        raise RuntimeError(f"sup-norm {h} below 1; the solver is inconsistent")
    certified = tail_sup < h * (1 - mpf("1e-12"))
    lower, upper = theorem_refs(rep)
    return SupNormResult(h, Representative(t_w, k_w, v_w), certified,
                         lower, upper, t_max, tail_sup)


def _tail_sup_level(tables, t_max: int) -> mpf:
    """Certified sup over t > t_max of the synthesized value bound
    sum_mu |c[t,k](mu)|."""
    sup = mpf(0)
    prev = None
    decreasing_since = 0
    for s in range(1, 2000):
        b = mpf(0)
        for tab in tables:
            b += tab.tail.coeff_bound(t_max + s)
        sup = max(sup, b)
        if prev is not None and b < prev:
            decreasing_since += 1
        else:
            decreasing_since = 0
        prev = b
        if b < mpf("1e-40") or (decreasing_since > 6 and b < sup / 2):
            break
    return sup


def lower_bound_witness(rep: Representation) -> Representative:
    """The representative at which aligned epsilon phases force a large value,
    for principal series with cond(chi1) > 2 cond(chi2)."""
    from .characters import critical_unit
    from .representations import PrincipalSeries

    if not isinstance(rep, PrincipalSeries):
        raise ValueError("witness construction applies to principal series only")
    a1 = rep.chi1.conductor
    a2 = rep.chi2.conductor
    if a1 <= 2 * a2:
        raise ValueError(
            f"witness needs cond(chi1) > 2 cond(chi2); got ({a1}, {a2})"
        )
    p, n = rep.p, rep.n
    chi1u = rep.chi1.unit_part
    if a2 == 0:
        n0 = n // 2
        return Representative(-n0 - n, n0, critical_unit(chi1u))
    k = a1 // 2
    v0 = critical_unit(chi1u)
    gap = k - a2
    if gap >= 1:
        w0 = v0 * (1 + p**gap) % p**k
    else:
        # Degenerate boundary floor(a1/2) = a2: the aligned coset collapses;
        # fall back to the aligning unit itself.
        w0 = v0 * (1 + 1) % p**k if p != 2 else v0
    return Representative(-(3 * a1 // 2), k, w0)


def supercuspidal_closed_value(rep: Representation, r: Representative) -> mpc:
    """Direct transcription of the trivial-L-factor closed form: a delta term
    at t = -n plus an epsilon-pair sum over characters of exact level k.

    Independent of the generic solver path; used to cross-check it.
    """
    from .representations import SupercuspidalOracle

    if not isinstance(rep, SupercuspidalOracle):
        raise ValueError("closed form applies to the supercuspidal descriptor")
    _validate_rep_triple(rep, r)
    n, p = rep.n, rep.p
    t, k, v = r.t, r.k, r.v
    omega_inv = rep.omega.inverse()
    eps_dual = rep.twist_data(omega_inv).eps
    if k == 0:
        return eps_dual if t == -n else mpc(0)
    zeta1 = _zeta1(p)
    total = mpc(0)
    if t == -n:
        g = mpc(-zeta1 / p) if k == 1 else mpc(0)
        total += g * eps_dual
    acc = mpc(0)
    for mu in characters_mod(p, k):
        if mu.conductor != k:
            continue
        if rep.twist_data(mu).A != -t:
            continue
        term = epsilon_factor(mu) * rep.twist_data(mu.inverse() * omega_inv).eps
        acc += term * mu.eval_unit(v).embed()
    total += zeta1 * mp.power(p, -mpf(k) / 2) * acc
    return total


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix with truncated p-adic entries."""

    a: PAdicApprox
    b: PAdicApprox
    c: PAdicApprox
    d: PAdicApprox

    @classmethod
    def from_rationals(cls, p: int, entries, K: int) -> "Mat2":
        vals = []
        for x in entries:
            if x == 0:
                vals.append(PAdicApprox.zero(p))
            else:
                vals.append(PAdicApprox.from_rational(p, x, K))
        return cls(*vals)

    def det(self) -> PAdicApprox:
        try:
            return self.a * self.d - self.b * self.c
        except PrecisionError:
            raise PrecisionError("determinant not resolvable at this precision")

    def __matmul__(self, other: "Mat2") -> "Mat2":
        def dot(x1, y1, x2, y2):
            s = x1 * x2
            t = y1 * y2
            if s.exact_zero:
                return t
            if t.exact_zero:
                return s
            return s + t

        return Mat2(
            dot(self.a, self.b, other.a, other.c),
            dot(self.a, self.b, other.b, other.d),
            dot(self.c, self.d, other.a, other.c),
            dot(self.c, self.d, other.b, other.d),
        )


def _val(x: PAdicApprox):
    return None if x.exact_zero else x.valuation()


def decompose_matrix(g: Mat2, n: int):
    """Write ``g = z(u) n(x) g(t,k,v) kappa`` with kappa in the level-n
    subgroup (upper-left entry 1 mod p^n, lower-left entry in p^n Z_p).

    Returns ``(u, x, Representative(t, k, v))``; ``u`` and ``x`` are exact
    p-adic data and ``v`` is an exact integer representing its class mod p^k.
    """
    p = g.a.p
    det = g.det()
    if det.exact_zero:
        raise ValueError("matrix is singular")
    vc, vd = _val(g.c), _val(g.d)
    if vc is None and vd is None:
        raise ValueError("matrix is singular")
    if vc is None:
        k = n
    elif vd is None:
        k = 0
    else:
        k = min(max(vc - vd, 0), n)

    if k == n:
        # Kill the lower-left entry with a lower-triangular kappa, peel
        # z(d) n(b/d) a(y) off the upper triangular result, and canonicalize
        # the level-n representative to v = 1.
        if not g.c.exact_zero:
            gamma = -(g.c / g.d)
            if gamma.valuation() < n:
                raise PrecisionError("coset boundary: lower entry not reducible")
            # g . [[1,0],[gamma,1]] zeroes the lower-left entry exactly.
            a_new = g.a + g.b * gamma if not g.b.exact_zero else g.a
            g = Mat2(a_new, g.b, PAdicApprox.zero(p), g.d)
        t_y = det.valuation() - 2 * g.d.valuation()
        u_y = det / (g.d * g.d) * _pi_pow(p, -t_y)
        u = -(g.d * _pi_pow(p, n) * u_y)
        x_tail = _pi_pow(p, t_y - n)
        x = x_tail if g.b.exact_zero else g.b / g.d + x_tail
        return u, x, Representative(t_y - 2 * n, n, 1)

    u = -g.c
    y = PAdicApprox.zero(p) if g.d.exact_zero else -(g.d / g.c)
    if y.exact_zero or y.valuation() > 0:
        # k = 0 with integral d/c: slide to the unit class v = 1 by a
        # unipotent kappa on the right; only the (2,2) ratio changes.
        y = -_one(p)
    if y.valuation() != -k:
        raise PrecisionError("inconsistent level detected; raise the precision")
    t = det.valuation() - 2 * g.c.valuation()
    delta = det / (g.c * g.c) * _pi_pow(p, -t)
    x = PAdicApprox.zero(p) if g.a.exact_zero else g.a / g.c
    v_exact = -(y * _pi_pow(p, k)) * delta.inverse()
    v = v_exact.unit_mod(max(k, 1))
    return u, x, Representative(t, k, v)


def _one(p: int) -> PAdicApprox:
    return PAdicApprox(p, 0, 1, 30)


def _pi_pow(p: int, t: int) -> PAdicApprox:
    return PAdicApprox(p, t, 1, 30)


def reduce_matrix(rep: Representation, g: Mat2):
    """Phases and representative with ``W(g) = psi_phase * omega_phase * W(g(t,k,v))``."""
    u, x, r = decompose_matrix(g, rep.n)
    psi_phase = psi_eval(x) if not x.exact_zero else ONE
    if u.exact_zero:
        raise ValueError("central part vanished; matrix is singular")
    omega_phase = rep.omega.eval_unit(u.unit_mod(max(rep.m, 1)))
    return psi_phase, omega_phase, r
