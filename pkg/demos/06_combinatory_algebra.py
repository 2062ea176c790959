"""Typed SK terms, bracket abstraction, and the fragment category.

Run:  python3 demos/06_combinatory_algebra.py
"""

import random

from gral.combalg import (
    App, DiscreteAssembly, STAR, TCA, UNIT, Var, assembly_bridges,
    bracket_abstract, constant_realizer_iso, enumerate_normal_forms,
    normalize, realizer_category_of, substitute, unit_augmentation,
)

# The concrete algebra: typed SK over one base type with two ground
# constants keeping the base carrier inhabited.  Normalization decides
# every equation.
tca = TCA(("o",), ground=2)
o = tca.base("o")
k = tca.k(o, o)
c0, c1 = tca.constants
print("K c0 c1 normalizes to:", normalize(App(App(k, c0), c1)))
print("I c1 normalizes to:", normalize(App(tca.i(o), c1)))

# Bracket abstraction eliminates a variable; applying the abstract and
# substituting agree after normalization.
x = Var("x", o)
t = App(App(tca.k(o, o), x), c0)          # K x c0, one free variable
lam = bracket_abstract(tca, t, x)
print("\nlambda x. (K x c0) =", lam)
print("applied to c1:", normalize(App(lam, c1)),
      "=", normalize(substitute(t, x, c1)))

# Adjoining the unit type: the unit laws collapse arrow types and the
# unit-level combinators come from a fixed table.
utca = unit_augmentation(tca)
uo = utca.base("o")
print("\n1 -> o normalizes to:", utca.arrow(UNIT, uo))
print("K at (1, o) is:", utca.k(UNIT, uo))
print("c0 . * =", normalize(App(c0, STAR)))

# Finite fragments induce a category: objects are types, morphisms are
# functions representable by a term, each carrying its least witness.
cat = realizer_category_of(utca, carrier_size=3, witness_size=3)
carrier = cat.carrier(uo)
print("\ncarrier fragment of o:", [repr(t) for t in carrier])
print("hom(1, o) size (bijective with the carrier):",
      len(cat.hom(UNIT, uo)))
endo = cat.hom(uo, uo)
print("representable endofunctions:", len(endo))
comp = cat.compose(endo[0], endo[-1])
print("a composite witness:", comp.witness, "validates:", cat.validate(comp))

# Realizer translations: unit-typed realizers are replaced by a chosen
# constant, and term realizers become computable functions; both round
# trips are identities.
rng = random.Random(0)
asm = DiscreteAssembly(utca, ("e0", "e1"), UNIT, {"e0": STAR, "e1": STAR})
rep = assembly_bridges(cat, [(asm, rng.choice(carrier))], [])
print("\nrealizer translation round trips:", "ok" if rep.ok else rep.failures)
