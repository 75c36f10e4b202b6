"""Certified sup-norms and the two-sided reference bounds.

For conductor exponent n and central conductor exponent m, the sup-norm of
the normalized newvector is sandwiched between
(2/3) max(q^(floor(3m/2)/2 - n/2), 1) and sqrt(2) q^(floor(n/2)/2); when
m = n the lower and upper references coincide up to the constant, and the
aligned witness value is exactly q^(floor(n/2)/2).
"""

from mpmath import mp

from padwhit import (
    ExtendedCharacter,
    PrincipalSeries,
    lower_bound_witness,
    make_character,
    standard_family,
    sup_norm,
    whittaker_value,
)

print("== the maximally ramified center: h = q^(floor(n/2)/2) on the nose ==")
for p, a1 in [(3, 2), (3, 3), (5, 2)]:
    rep = PrincipalSeries(
        ExtendedCharacter(make_character(p, a1, [1])),
        ExtendedCharacter(make_character(p, 0, [])),
    )
    res = sup_norm(rep)
    w = lower_bound_witness(rep)
    wval = abs(whittaker_value(rep, w, direct=True))
    print(f"  p={p} n=m={rep.n}:  h = {mp.nstr(res.h, 10)}  "
          f"witness {res.witness}  |W(witness)| = {mp.nstr(wval, 10)}  "
          f"certified={res.certified}")

print()
print("== the sandwich over the full p = 3, n <= 4 family ==")
family = standard_family(3, 4)
fails = 0
hmax = mp.mpf(0)
for rep in family:
    res = sup_norm(rep)
    lo = mp.mpf(2) / 3 * res.lower_ref
    hi = mp.sqrt(2) * res.upper_ref
    ok = lo <= res.h <= hi and res.certified
    fails += not ok
    hmax = max(hmax, res.h / res.upper_ref)
print(f"  {len(family)} descriptors, sandwich violations: {fails}")
print(f"  largest h / q^(floor(n/2)/2) observed: {mp.nstr(hmax, 8)} "
      f"(allowed up to sqrt(2) = {mp.nstr(mp.sqrt(2), 8)})")

print()
print("== a profile in m at fixed n = 4 (p = 3) ==")
by_m = {}
for rep in family:
    if rep.n != 4:
        continue
    res = sup_norm(rep)
    by_m.setdefault(rep.m, []).append(res.h)
for m in sorted(by_m):
    hs = by_m[m]
    print(f"  m = {m}: {len(hs):3d} descriptors, "
          f"h in [{mp.nstr(min(hs), 8)}, {mp.nstr(max(hs), 8)}]")
print("  (the lower edge grows once m exceeds 2n/3: large values need a")
print("   highly ramified center)")
