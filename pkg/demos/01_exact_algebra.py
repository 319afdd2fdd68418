"""
Exact polynomial arithmetic
===========================

Sparse multivariate polynomials over the rationals, gcds, resultants and
squarefreeness, all computed without floating point.
"""

# %%
# Polynomials are parsed from plain strings and printed in graded lex order.
from h1jump.gcd import poly_gcd, resultant, resultant_sylvester, squarefree_test
from h1jump.poly import parse_laurent, parse_poly, rat

f = parse_poly("(u - v)^2 * (u + 2*v - 1/3)")
g = parse_poly("(u - v) * (u^2 + v^2 - 1)")
print("f =", f)
print("g =", g)

# %%
# The gcd recovers the shared factor, normalized to a monic leading term.
print("gcd(f, g) =", poly_gcd(f, g))

# %%
# Resultants come from a subresultant sequence. A Bareiss determinant of the
# Sylvester matrix computes the same polynomial independently.
p, q = parse_poly("u^2 + v^2 - 1"), parse_poly("u - v")
r = resultant(p, q, "v")
print("Res_v =", r, "| agrees with Sylvester:", r == resultant_sylvester(p, q, "v"))

# %%
# A squarefree test sees repeated factors over the algebraic closure.
print(squarefree_test(parse_poly("v^4"), ["v"]), squarefree_test(parse_poly("v^4 - 1"), ["v"]))

# %%
# Laurent polynomials in z carry coefficients in the remaining variables.
L = parse_laurent("t*z^-1 + 1 + z^2")
print(L, "| exponent range:", (L.min_exp(), L.max_exp()))
print("at t = 3/2:", L.subs({"t": rat("3/2")}))
