"""
A tour of the exact brackets
============================

Canonical pairs, Hamilton's equations, and the hbar-deformed bracket,
all in exact rational arithmetic.
"""

from fractions import Fraction

from phasealg import (
    PhaseContext,
    PhasePoly,
    format_poly,
    moyal_bracket,
    parse_expression,
    poisson_bracket,
)

# one degree of freedom, default hbar = 1
ctx = PhaseContext(1)
q = PhasePoly.variable(ctx, "q1")
p = PhasePoly.variable(ctx, "p1")

print("canonical pair:")
print("  {q1, p1} =", format_poly(poisson_bracket(q, p)))
print("  {p1, q1} =", format_poly(poisson_bracket(p, q)))

# Hamilton's equations for a harmonic oscillator: qdot = {q, H}, pdot = {p, H}
h = parse_expression("p1^2/2 + q1^2/2", ctx)
print("\nharmonic oscillator H =", format_poly(h))
print("  qdot = {q1, H} =", format_poly(poisson_bracket(q, h)))
print("  pdot = {p1, H} =", format_poly(poisson_bracket(p, h)))

# the Leibniz rule holds exactly, no floating point anywhere
a = parse_expression("q1^2*p1", ctx)
b = parse_expression("q1 + p1", ctx)
c = parse_expression("p1^3 - 2*q1", ctx)
lhs = poisson_bracket(a, b * c)
rhs = poisson_bracket(a, b) * c + b * poisson_bracket(a, c)
print("\nLeibniz check: {a, b*c} - ({a,b}*c + b*{a,c}) =", format_poly(lhs - rhs))

# the deformed bracket agrees with the classical one up to degree 2 ...
quad = parse_expression("q1^2 + q1*p1", ctx)
quart = parse_expression("q1^2*p1^2", ctx)
print("\ndegree <= 2 on one side: moyal - poisson =",
      format_poly(moyal_bracket(quad, quart) - poisson_bracket(quad, quart)))

# ... and picks up hbar^2 corrections on cubics
cubic_q = q ** 3
cubic_p = p ** 3
print("\ncubics at hbar = 1:")
print("  poisson(q1^3, p1^3) =", format_poly(poisson_bracket(cubic_q, cubic_p)))
print("  moyal(q1^3, p1^3)   =", format_poly(moyal_bracket(cubic_q, cubic_p)))

# the correction scales as hbar^2
for hbar in (Fraction(1, 2), 2):
    ctx_h = PhaseContext(1, hbar=hbar)
    qh = PhasePoly.variable(ctx_h, "q1")
    ph = PhasePoly.variable(ctx_h, "p1")
    diff = moyal_bracket(qh ** 3, ph ** 3) - poisson_bracket(qh ** 3, ph ** 3)
    print(f"  hbar = {hbar}: moyal - poisson = {format_poly(diff)}")
