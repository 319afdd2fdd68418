"""
Vector bundles on the projective line
=====================================

A rank-2 extension of O(1) by O(-1) whose class is scaled by a parameter t.
Its splitting type jumps at t = 0.
"""

# %%
from fractions import Fraction

from h1jump.bundle import (
    ExtClassSpec,
    direct_sum,
    global_sections,
    make_extension,
    specialize_parameter,
    splitting_type,
    trivial_bundle,
)
from h1jump.poly import parse_laurent

G = make_extension(ExtClassSpec(-1, 1, parse_laurent("t")))
print("transition matrix:", [[str(e) for e in row] for row in G.matrix])

# %%
# Specializing t gives honest bundles. The split fibre sits over t = 0 only.
for c in (0, 1, -1, 2, Fraction(-7, 3)):
    print(f"t = {c}: splitting type {splitting_type(specialize_parameter(G, c))}")

# %%
# Global sections are explicit pairs of chart vectors glued by the transition.
for s in global_sections(specialize_parameter(G, 1), 0):
    print([str(x) for x in s.f0], "|", [str(x) for x in s.f1])

# %%
# Adding a trivial summand gives the rank-3 bundle used for the family.
E = direct_sum(G, trivial_bundle(1))
print("E_0:", splitting_type(specialize_parameter(E, 0)), " E_1:", splitting_type(specialize_parameter(E, 1)))
