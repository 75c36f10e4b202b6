"""Scalar arithmetic substrate.

Three layers, from exact to numeric:

* :class:`RootOfUnity` -- an exact phase ``e^{2 pi i a/N}`` kept as a reduced
  pair of integers, so that products of character values never drift.
* mpmath ``mpf``/``mpc`` scalars at a configurable binary precision
  (128 bits by default).  Sums of exact phases are embedded once, at the end.
* :class:`LaurentPoly` / :class:`RationalFn` -- finite Laurent polynomials and
  their quotients in one indeterminate X, with Taylor-Laurent expansion around
  X = 0 by long division.

All values are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from mpmath import mp, mpc, mpf

DEFAULT_PRECISION = 128

# Absolute tolerance for internal identity checks (exact summation layer)
# and for user-facing comparisons (series-mediated layer).
TOL_IDENTITY = mpf("1e-20")
TOL_USER = mpf("1e-9")

if mp.prec < DEFAULT_PRECISION:
    mp.prec = DEFAULT_PRECISION


def set_precision(bits: int) -> None:
    """Set the working binary precision for all scalar arithmetic."""
    if bits < 53:
        raise ValueError(f"precision must be at least 53 bits, got {bits}")
    mp.prec = bits
    _embed_cached.cache_clear()
    unity_table.cache_clear()


def get_precision() -> int:
    return mp.prec


def approx_equal(a, b, tol=TOL_USER) -> bool:
    """Compare scalars against an explicit absolute tolerance."""
    return abs(mpc(a) - mpc(b)) <= tol


@lru_cache(maxsize=None)
def _embed_cached(num: int, order: int, prec: int) -> mpc:
    return mp.expjpi(mpf(2 * num) / order)


@lru_cache(maxsize=64)
def unity_table(order: int) -> tuple:
    """All order-th roots of unity ``(e^{2 pi i j/order})_j`` at working precision."""
    return tuple(mp.expjpi(mpf(2 * j) / order) for j in range(order))


@dataclass(frozen=True)
class RootOfUnity:
    """Exact phase ``e^{2 pi i num/order}`` with ``0 <= num < order`` reduced."""

    num: int
    order: int

    def __post_init__(self):
        if self.order <= 0:
            raise ValueError("order must be positive")
        num = self.num % self.order
        g = math.gcd(num, self.order)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "order", self.order // g)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(
            self.num * other.order + other.num * self.order,
            self.order * other.order,
        )

    def __pow__(self, e: int) -> "RootOfUnity":
        return RootOfUnity(self.num * e, self.order)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.num, self.order)

    conjugate = inverse

    def is_one(self) -> bool:
        return self.num == 0

    def embed(self) -> mpc:
        """Numeric value at the working precision; |result| = 1 up to 2^(1-P)."""
        return _embed_cached(self.num, self.order, mp.prec)

    def __repr__(self):
        return f"RootOfUnity({self.num}, {self.order})"


ONE = RootOfUnity(0, 1)
MINUS_ONE = RootOfUnity(1, 2)


def root_mul(r1: RootOfUnity, r2: RootOfUnity) -> RootOfUnity:
    return r1 * r2


def embed(r: RootOfUnity) -> mpc:
    return r.embed()


def phase_sum(counts: Mapping[RootOfUnity, int]) -> mpc:
    """Sum ``count * root`` with one embedding per distinct exact phase."""
    total = mpc(0)
    for root, count in counts.items():
        total += count * root.embed()
    return total


class LaurentPoly:
    """Finite Laurent polynomial with mpc coefficients, exact zeros dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | Iterable[tuple[int, object]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        store: dict[int, mpc] = {}
        for deg, c in items:
            c = mpc(c)
            if c != 0:
                store[deg] = store.get(deg, mpc(0)) + c
                if store[deg] == 0:
                    del store[deg]
        self.coeffs = store

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coeff, degree: int) -> "LaurentPoly":
        return cls({degree: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def min_degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return min(self.coeffs)

    @property
    def max_degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return max(self.coeffs)

    def __getitem__(self, degree: int) -> mpc:
        return self.coeffs.get(degree, mpc(0))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, mpc(0)) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, mpc] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                out[d] = out.get(d, mpc(0)) + c1 * c2
        return LaurentPoly(out)

    def scale(self, s) -> "LaurentPoly":
        s = mpc(s)
        return LaurentPoly({d: c * s for d, c in self.coeffs.items()})

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({d + k: c for d, c in self.coeffs.items()})

    def truncate(self, max_degree: int) -> "LaurentPoly":
        return LaurentPoly({d: c for d, c in self.coeffs.items() if d <= max_degree})

    def __call__(self, x) -> mpc:
        x = mpc(x)
        return sum((c * x**d for d, c in self.coeffs.items()), mpc(0))

    def max_abs_difference(self, other: "LaurentPoly") -> mpf:
        degrees = set(self.coeffs) | set(other.coeffs)
        return max((abs(self[d] - other[d]) for d in degrees), default=mpf(0))

    def __repr__(self):
        terms = " + ".join(f"({c})*X^{d}" for d, c in sorted(self.coeffs.items()))
        return f"LaurentPoly<{terms or '0'}>"


def binomial(alpha, degree: int = 1) -> LaurentPoly:
    """The Euler-type factor ``1 - alpha * X^degree``."""
    return LaurentPoly({0: 1, degree: -mpc(alpha)})


class RationalFn:
    """Quotient of Laurent polynomials, normalized so the denominator's
    lowest-degree term sits at degree 0 with coefficient 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = None):
        if den is None:
            den = LaurentPoly.one()
        if den.is_zero():
            raise ZeroDivisionError("denominator is identically zero")
        d0 = den.min_degree
        c0 = den[d0]
        self.num = num.shift(-d0).scale(1 / c0)
        self.den = den.shift(-d0).scale(1 / c0)

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(self.num * other.num, self.den * other.den)

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __truediv__(self, other: "RationalFn") -> "RationalFn":
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFn(self.num * other.den, self.den * other.num)

    def scale(self, s) -> "RationalFn":
        return RationalFn(self.num.scale(s), self.den)

    def series(self, t_max: int) -> LaurentPoly:
        return series_expand(self, t_max)

    def __repr__(self):
        return f"RationalFn({self.num!r} / {self.den!r})"


def series_expand(f: RationalFn, t_max: int) -> LaurentPoly:
    """Taylor-Laurent expansion of ``f`` around X = 0 through degree ``t_max``.

    The normalized denominator has constant term 1, so the principal part is
    exactly the numerator's negative range and the expansion is plain long
    division; coefficients agree with ``f`` exactly through degree ``t_max``.
    """
    if f.num.is_zero():
        return LaurentPoly.zero()
    den = f.den
    if den[0] == 0:
        raise ValueError("malformed rational function: constant term vanished")
    dmin = f.num.min_degree
    den_tail = [(j, c) for j, c in den.coeffs.items() if j > 0]
    out: dict[int, mpc] = {}
    for d in range(dmin, t_max + 1):
        acc = f.num[d]
        for j, c in den_tail:
            if d - j >= dmin:
                acc -= c * out.get(d - j, mpc(0))
        out[d] = acc
    return LaurentPoly(out)
