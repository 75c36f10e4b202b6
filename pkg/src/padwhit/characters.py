"""Characters of Q_p^x, Gauss sums, conductors, and GL(1) epsilon factors.

A :class:`UnitCharacter` is a character of Q_p^x that is trivial at the
uniformizer, stored as an exponent vector over the canonical generators of
``(Z/p^a)^x`` at its exact conductor ``a``.  An :class:`ExtendedCharacter`
adds an exact root-of-unity value at the uniformizer.  Character values stay
exact until a final embedding, so Gauss sums of thousands of terms carry no
phase drift.

Gauss sums are unit-group averages (``vol((Z/p^a)^x) = 1``); the epsilon
factor of a ramified character is read off the Gauss sum at the critical
valuation and cached, since sup-norm scans reuse thousands of them.
"""

from __future__ import annotations

import math
import re
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from mpmath import mp, mpc, mpf

from .numerics import ONE, RootOfUnity, unity_table
from .padics import PAdicApprox, unit_group


@dataclass(frozen=True)
class UnitCharacter:
    """Character of Q_p^x with value 1 at p, of exact conductor ``conductor``.

    ``exps[i]`` is the exponent on the i-th canonical generator ``g_i`` of
    ``(Z/p^conductor)^x``: the character sends ``g_i`` to ``zeta_{ord(g_i)}^{exps[i]}``.
    """

    p: int
    conductor: int
    exps: tuple[int, ...]

    def __post_init__(self):
        group = unit_group(self.p, self.conductor)
        if len(self.exps) != len(group.generators):
            raise ValueError("exponent vector does not match the generator list")
        reduced = tuple(e % order for e, (_, order) in zip(self.exps, group.generators))
        object.__setattr__(self, "exps", reduced)

    @property
    def group(self):
        return unit_group(self.p, self.conductor)

    def is_trivial(self) -> bool:
        return self.conductor == 0

    def order(self) -> int:
        n = 1
        for e, (_, order) in zip(self.exps, self.group.generators):
            n = math.lcm(n, order // math.gcd(order, e))
        return n

    def eval_unit(self, u: int) -> RootOfUnity:
        """Value at a unit residue (known at least mod p^conductor)."""
        if self.conductor == 0:
            return ONE
        group = self.group
        num, den = 0, 1
        for e, exp_dl, (_, order) in zip(self.exps, group.dlog(u), group.generators):
            num = num * order + e * exp_dl * den
            den *= order
        return RootOfUnity(num, den)

    def eval(self, x) -> RootOfUnity:
        """Value at a unit residue or at a PAdicApprox (any valuation)."""
        if isinstance(x, PAdicApprox):
            return self.eval_unit(x.unit_mod(max(self.conductor, 1)))
        return self.eval_unit(int(x))

    def at_minus_one(self) -> RootOfUnity:
        return self.eval_unit(-1 % max(self.p**self.conductor, 2))

    def __mul__(self, other: "UnitCharacter") -> "UnitCharacter":
        if self.p != other.p:
            raise ValueError("mixed residue characteristics")
        level = max(self.conductor, other.conductor)
        gens = unit_group(self.p, level).generators
        exps = []
        for g, order in gens:
            val = self.eval_unit(g) * other.eval_unit(g)
            e = val.num * order
            if e % val.order:
                raise RuntimeError("character value has wrong order at generator")
            exps.append(e // val.order)
        return make_character(self.p, level, exps)

    def inverse(self) -> "UnitCharacter":
        return UnitCharacter(self.p, self.conductor, tuple(-e for e in self.exps))

    def __pow__(self, k: int) -> "UnitCharacter":
        chi = UnitCharacter(self.p, self.conductor, tuple(k * e for e in self.exps))
        return _reduce_to_conductor(chi)

    def __repr__(self):
        return f"UnitCharacter({format_char(self)!r})"


def _phase_on_subgroup_trivial(chi: UnitCharacter, c: int) -> bool:
    """Is chi trivial on the image of 1 + p^c Z_p in (Z/p^a)^x?"""
    a, p = chi.conductor, chi.p
    if c >= a:
        return True
    mod = p**a
    step = p**c
    for j in range(1, mod // step):
        u = 1 + step * j
        if u % p == 0:
            continue
        if not chi.eval_unit(u % mod).is_one():
            return False
    return True


def _reduce_to_conductor(chi: UnitCharacter) -> UnitCharacter:
    a = chi.conductor
    c = 0
    while not _phase_on_subgroup_trivial(chi, c):
        c += 1
    if c == a:
        return chi
    gens = unit_group(chi.p, c).generators
    exps = []
    for g, order in gens:
        val = chi.eval_unit(g)  # well-defined: chi is trivial on 1 + p^c
        e = val.num * order
        if e % val.order:
            raise RuntimeError("conductor reduction produced a wrong-order value")
        exps.append(e // val.order)
    return UnitCharacter(chi.p, c, tuple(exps))


def make_character(p: int, level: int, exps) -> UnitCharacter:
    """Character of (Z/p^level)^x by generator exponents, stored at its exact
    conductor (the input level is only an upper bound)."""
    exps = tuple(int(e) for e in exps)
    gens = unit_group(p, level).generators
    if not gens and exps in ((), (0,)):
        exps = ()
    return _reduce_to_conductor(UnitCharacter(p, level, exps))


def char_eval(mu: UnitCharacter, u) -> RootOfUnity:
    return mu.eval(u)


def conductor_product(mu: UnitCharacter, nu: UnitCharacter) -> int:
    return (mu * nu).conductor


@lru_cache(maxsize=None)
def characters_mod(p: int, k: int) -> tuple[UnitCharacter, ...]:
    """All characters of (Z/p^k)^x, in lexicographic exponent order."""
    gens = unit_group(p, k).generators
    orders = [order for _, order in gens]

    def rec(i):
        if i == len(orders):
            yield ()
            return
        for e in range(orders[i]):
            for tail in rec(i + 1):
                yield (e,) + tail

    return tuple(make_character(p, k, exps) for exps in rec(0))


@lru_cache(maxsize=None)
def _units_array(p: int, M: int) -> np.ndarray:
    mod = p**M
    r = np.arange(mod, dtype=np.int64)
    return r[(r % p) != 0] if M >= 1 else np.array([1], dtype=np.int64)


@lru_cache(maxsize=None)
def _char_phase_data(mu: UnitCharacter):
    """(denominator d, numer array over residues mod p^conductor) for mu."""
    if mu.conductor == 0:
        return 1, None
    group = mu.group
    d = 1
    for _, order in group.generators:
        d = math.lcm(d, order)
    mod = p_pow = mu.p**mu.conductor
    nums = np.zeros(p_pow, dtype=np.int64)
    for e, arr, (_, order) in zip(mu.exps, group.dlog_arrays(), group.generators):
        nums = (nums + e * np.where(arr >= 0, arr, 0) * (d // order)) % d
    del mod
    return d, nums


def gauss_sum(x: PAdicApprox, mu: UnitCharacter) -> mpc:
    """Unit-average Gauss transform: mean of psi(x*y)*mu(y) over y in (Z/p^M)^x,
    M = max(cond(mu), -v(x), 1).  Summed as exact phases, embedded once."""
    p = mu.p
    if x.exact_zero:
        return mpc(1 if mu.is_trivial() else 0)
    t = x.valuation()
    M = max(mu.conductor, -t, 1)
    ys = _units_array(p, M)
    if t < 0:
        d1 = p**-t
        nums1 = (x.unit_mod(-t) * ys) % d1
    else:
        d1, nums1 = 1, 0
    d2, mu_nums = _char_phase_data(mu)
    if mu_nums is None:
        nums2 = 0
    else:
        nums2 = mu_nums[ys % (p**mu.conductor)]
    L = math.lcm(d1, d2)
    joint = (nums1 * (L // d1) + nums2 * (L // d2)) % L if L > 1 else np.zeros(1)
    counts = np.bincount(np.atleast_1d(np.asarray(joint, dtype=np.int64)), minlength=L)
    if L == 1:
        return mpc(len(ys)) / len(ys)
    roots = unity_table(L)
    total = mpc(0)
    for j in np.flatnonzero(counts):
        total += int(counts[j]) * roots[j]
    return total / len(ys)


def zeta_value(p: int, s: int) -> Fraction:
    qs = Fraction(p) ** s
    return qs / (qs - 1)


def _as_mpf(fr: Fraction) -> mpf:
    return mpf(fr.numerator) / fr.denominator


def gauss_sum_closed(x: PAdicApprox, mu: UnitCharacter) -> mpc:
    """The five-case closed form of the unit-average Gauss transform."""
    p = mu.p
    zeta1 = _as_mpf(zeta_value(p, 1))
    if x.exact_zero:
        return mpc(1 if mu.is_trivial() else 0)
    t = x.valuation()
    if mu.is_trivial():
        if t >= 0:
            return mpc(1)
        if t == -1:
            return mpc(-zeta1 / p)
        return mpc(0)
    a = mu.conductor
    if t != -a:
        return mpc(0)
    mu_inv_at_x = mu.eval_unit(x.unit_mod(a)).inverse()
    return zeta1 * mp.power(p, mpf(t) / 2) * epsilon_factor(mu.inverse()) * mu_inv_at_x.embed()


_eps_perturbation = [mpf(0)]


@contextmanager
def perturb_epsilon(delta):
    """Multiply every ramified epsilon factor by (1 + delta).  Canary hook for
    testing that the verification harness actually detects wrong constants."""
    old = _eps_perturbation[0]
    _eps_perturbation[0] = mpf(delta)
    try:
        yield
    finally:
        _eps_perturbation[0] = old


@lru_cache(maxsize=None)
def _eps_cached(mu: UnitCharacter, prec: int) -> mpc:
    a = mu.conductor
    x = PAdicApprox(mu.p, -a, 1, a)
    g = gauss_sum(x, mu.inverse())
    zeta1 = _as_mpf(zeta_value(mu.p, 1))
    return mp.power(mu.p, mpf(a) / 2) / zeta1 * g


def epsilon_factor(mu: UnitCharacter) -> mpc:
    """epsilon(1/2, mu) for mu trivial at the uniformizer; 1 when unramified.

    Normalized so that the Gauss transform at valuation -a equals
    ``zeta(1) q^{-a/2} epsilon(1/2, mu^{-1})``; unit modulus for these
    (unitary) characters.
    """
    if mu.conductor == 0:
        return mpc(1)
    value = _eps_cached(mu, mp.prec)
    if _eps_perturbation[0]:
        value = value * (1 + _eps_perturbation[0])
    return value


def epsilon_gl1(mu: UnitCharacter) -> mpc:
    return epsilon_factor(mu)


def critical_unit(chi: UnitCharacter) -> int:
    """The unit class v (mod p^floor(r/2)) aligning chi on the principal units
    with the additive character: chi(1 + p^{r - r0} u) = psi(v^{-1} p^{-r0} u)
    for all integers u, where r = cond(chi) >= 1 and r0 = floor(r/2).

    Both sides are homomorphisms in u on Z/p^{r0} (since 2(r - r0) >= r), and
    that group is generated by 1, so matching at u = 1 suffices; the full
    condition is re-verified by :func:`verify_critical_unit` at check time.
    """
    r = chi.conductor
    if r < 1:
        raise ValueError("critical_unit needs a ramified character")
    r0 = r // 2
    if r0 == 0:
        return 1
    p = chi.p
    mod0 = p**r0
    target = chi.eval_unit(1 + p ** (r - r0))
    for v in range(1, mod0):
        if v % p == 0:
            continue
        if RootOfUnity(pow(v, -1, mod0), mod0) == target:
            return v
    raise RuntimeError("no aligning unit exists; character data is inconsistent")


def verify_critical_unit(chi: UnitCharacter, v0: int) -> bool:
    """Check the alignment identity for every u mod p^floor(r/2)."""
    r, p = chi.conductor, chi.p
    r0 = r // 2
    if r0 == 0:
        return True
    mod0 = p**r0
    v_inv = pow(v0, -1, mod0)
    for u in range(mod0):
        lhs = chi.eval_unit(1 + p ** (r - r0) * u)
        rhs = RootOfUnity(v_inv * u, mod0)
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class ExtendedCharacter:
    """A unitary character of Q_p^x: a UnitCharacter plus an exact
    root-of-unity value at the uniformizer."""

    unit_part: UnitCharacter
    pi_value: RootOfUnity = ONE

    @property
    def p(self) -> int:
        return self.unit_part.p

    @property
    def conductor(self) -> int:
        return self.unit_part.conductor

    def is_unramified(self) -> bool:
        return self.conductor == 0

    def eval(self, x: PAdicApprox) -> RootOfUnity:
        t = x.valuation()
        return self.pi_value**t * self.unit_part.eval_unit(
            x.unit_mod(max(self.conductor, 1))
        )

    def at_minus_one(self) -> RootOfUnity:
        return self.unit_part.at_minus_one()

    def twist(self, mu: UnitCharacter) -> "ExtendedCharacter":
        return ExtendedCharacter(self.unit_part * mu, self.pi_value)

    def __mul__(self, other: "ExtendedCharacter") -> "ExtendedCharacter":
        return ExtendedCharacter(
            self.unit_part * other.unit_part, self.pi_value * other.pi_value
        )

    def inverse(self) -> "ExtendedCharacter":
        return ExtendedCharacter(self.unit_part.inverse(), self.pi_value.inverse())

    def epsilon(self) -> mpc:
        """epsilon(1/2, .): the unramified part shifts the phase by its value
        at the uniformizer raised to the conductor exponent."""
        a = self.conductor
        if a == 0:
            return mpc(1)
        return (self.pi_value**a).embed() * epsilon_factor(self.unit_part)

    def satake(self) -> RootOfUnity | None:
        """Present iff unramified; then L(s, chi) = (1 - satake q^-s)^-1."""
        return self.pi_value if self.conductor == 0 else None

    def __repr__(self):
        return f"ExtendedCharacter({format_char(self)!r})"


_CHAR_RE = re.compile(
    r"^(\d+)\^(\d+):(-?\d+(?:,-?\d+)*)(?:@(-?\d+)/(\d+))?$"
)


def parse_char(text: str, p_expect: int | None = None) -> ExtendedCharacter:
    """Parse the character grammar ``p "^" a ":" e1[,e2] ["@" num "/" den]``."""
    m = _CHAR_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed character spec: {text!r}")
    p, a = int(m.group(1)), int(m.group(2))
    if p_expect is not None and p != p_expect:
        raise ValueError(f"character spec {text!r} is not over p={p_expect}")
    exps = [int(e) for e in m.group(3).split(",")]
    gens = unit_group(p, a).generators
    if not gens:
        if any(exps):
            raise ValueError(f"level-{a} character group over p={p} is trivial")
        exps = []
    elif len(exps) != len(gens):
        raise ValueError(
            f"expected {len(gens)} exponent(s) for p={p}, level {a}, got {len(exps)}"
        )
    unit_part = make_character(p, a, exps)
    if m.group(4) is None:
        pi_value = ONE
    else:
        pi_value = RootOfUnity(int(m.group(4)), int(m.group(5)))
    return ExtendedCharacter(unit_part, pi_value)


def parse_unit_char(text: str, p_expect: int | None = None) -> UnitCharacter:
    chi = parse_char(text, p_expect)
    if not chi.pi_value.is_one():
        raise ValueError(f"character {text!r} must take value 1 at the uniformizer")
    return chi.unit_part


def format_char(chi) -> str:
    """Canonical spec string at the exact conductor."""
    if isinstance(chi, ExtendedCharacter):
        unit, piv = chi.unit_part, chi.pi_value
    else:
        unit, piv = chi, ONE
    exps = ",".join(str(e) for e in unit.exps) if unit.exps else "0"
    return f"{unit.p}^{unit.conductor}:{exps}@{piv.num}/{piv.order}"
