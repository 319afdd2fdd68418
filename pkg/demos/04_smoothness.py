"""
Certifying smoothness
=====================

A form z0*g0 + z1*g1 of bidegree (1, 4) on P^1 x P^2 is smooth exactly when a
small polynomial system has no common zero over the algebraic closure.
The check eliminates variables exactly and splits on zero divisors.
"""

# %%
from h1jump.poly import parse_poly
from h1jump.smooth import Bidegree14Form, bivariate_common_zero_exists, certify_smoothness

smooth = Bidegree14Form(parse_poly("x1^4 + x2^4"), parse_poly("x2^4 + x3^4"))
res = certify_smoothness(smooth)
print(res.smooth, res.method)

# %%
# Singular forms come with a witness point when one is rational.
res = certify_smoothness(Bidegree14Form(parse_poly("x3^4"), parse_poly("(x1 + x2)^4")))
print(res.smooth, res.method, res.witness)

# %%
# Irrational singular points are still found, by elimination instead of search.
form = Bidegree14Form(parse_poly("(x1^2 - 2*x3^2)^2"), parse_poly("x2^4 + x3^4"))
res = certify_smoothness(form)
print(res.smooth, res.method)

# %%
# The bivariate backend on its own: does a system have a common zero?
trace = {}
system = [parse_poly(s) for s in ("(u^2-2)*(u-3)", "(u-3)*(v^2-u)", "(u^2-2)*(v-1)+(u-3)*(v^2-u)")]
print(bivariate_common_zero_exists(system, trace=trace), trace["branches"])
