"""
The abelian Higgs mechanism, checked step by step
=================================================

Four Lagrangians, from a massless complex scalar coupled to a U(1) gauge
field to a massive vector boson.  Each adjacent pair is compared by
expanding both sides to a canonical polynomial.
"""

from gaugelogic import fields, higgs

steps = higgs.chain_steps()
for label, x in steps.items():
    print(f"{label}: L = {fields.print_expr(x)}")

# Pairwise and end-to-end comparison
record = higgs.verify_higgs_chain()
for check in record.checks:
    print(f"{check.lhs} -> {check.rhs}: {check.verdict.value}")

# The potential after expanding around the vacuum
print(fields.normalize("mu^2*rho^2 - lambda*rho^4"))

# Before substitution the last Lagrangian carries 1/2 M^2 B^2
print("mass term present:", higgs.has_mass_term(steps["H4"]))

# An independent floating-point check at one point
point = {"A": 0.3, "dtheta": 0.7, "dchi": -0.2, "chi": 0.5, "theta": 1.1,
         "e": 0.9, "mu": 1.3, "lambda": 0.8, "F": 2.0}
for label, x in steps.items():
    print(label, fields.numeric_eval(x, point))

# Tamper with one coefficient and the residual shows exactly what changed
from fractions import Fraction
bad = higgs.mutated_chain("H3", 4, Fraction(-1, 4))
print(higgs.verify_step(bad["H2"], bad["H3"]).residual)
