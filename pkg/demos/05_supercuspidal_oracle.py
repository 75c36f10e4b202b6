"""Supercuspidal descriptors through the twist-data oracle.

A supercuspidal representation enters through a JSON document listing, for
every unit character mu of conductor <= n, the conductor exponent and epsilon
factor of the mu-twist.  The engine then evaluates the newvector from the
functional equation alone: the level-0 column is a unit-modulus delta at
t = -n, and each level-k value is a short epsilon-pair sum.

The oracle below is synthetic (random unit phases respecting the duality
pairing) -- structurally faithful, but encoding no actual representation.
"""

import json
import tempfile

from mpmath import mp

from padwhit import (
    Representative,
    dump_oracle,
    load_oracle,
    make_character,
    sup_norm,
    supercuspidal_closed_value,
    whittaker_value,
)
from padwhit.verify import synthetic_oracle

sc = synthetic_oracle(3, 2, make_character(3, 1, [1]), seed=7)
print(f"synthetic supercuspidal: p = {sc.p}, n = {sc.n}, m = {sc.m}, "
      f"{len(sc.twists)} oracle keys")

print()
print("== JSON round trip ==")
doc = dump_oracle(sc)
print(json.dumps(doc["twists"][:2], indent=2))
with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
    json.dump(doc, fh)
    path = fh.name
sc2 = load_oracle(path)
print(f"reloaded descriptor: {sc2.spec_string()}")

print()
print("== the level-0 column is a delta ==")
for t in range(-4, 1):
    val = whittaker_value(sc, Representative(t, 0, 1))
    print(f"  t = {t:+d}:  |W(g(t,0,1))| = {mp.nstr(abs(val), 8)}")

print()
print("== generic values vs the closed epsilon-pair sum ==")
for (t, k, v) in [(-2, 1, 2), (-3, 1, 1), (-4, 2, 5), (-2, 2, 7)]:
    solver = whittaker_value(sc, Representative(t, k, v), direct=True)
    closed = supercuspidal_closed_value(sc, Representative(t, k, v))
    print(f"  (t,k,v)=({t},{k},{v}):  solver {mp.nstr(solver, 8)}  "
          f"closed {mp.nstr(closed, 8)}  dev {mp.nstr(abs(solver-closed), 3)}")

print()
res = sup_norm(sc)
print(f"certified sup-norm of the synthetic descriptor: h = {mp.nstr(res.h, 10)} "
      f"at {res.witness}")
