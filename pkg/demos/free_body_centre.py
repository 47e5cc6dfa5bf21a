"""
A free body's algebra has a one-dimensional centre
==================================================

Close the algebra generated by the free kinetic energy and the three
position coordinates.  The momenta appear on their own, brackets of
conjugate pairs land on the identity, and nothing except multiples of
the identity commutes with the whole algebra.
"""

from phasealg import (
    AlgebraElement,
    PhaseContext,
    close_algebra,
    find_casimir,
    find_center,
    format_poly,
    parse_expression,
)

ctx = PhaseContext(3, params={"M": 1, "X0": 0})
seeds = [
    AlgebraElement("H", parse_expression("(p1^2 + p2^2 + p3^2)/(2*M)", ctx)),
    AlgebraElement("X1", parse_expression("q1 - X0", ctx)),
    AlgebraElement("X2", parse_expression("q2 - X0", ctx)),
    AlgebraElement("X3", parse_expression("q3 - X0", ctx)),
]

closure = close_algebra(seeds)
print(f"basis has {len(closure.basis)} elements:")
for elem in closure.basis:
    print(f"  {elem.name} = {format_poly(elem.poly)}")

# centre at total degree <= 2: a single constant solution
center = find_center(closure, max_total_degree=2)
print(f"\ncentre at degree <= 2 ({len(center.solutions)} solution(s)):")
for sol in center.solutions:
    print("  ", format_poly(sol))
print("nonconstant centre elements:", len(center.nonconstant()))

# the quadratic ansatz finds only trivial combinations
print("\nquadratic invariant candidates:")
for sol in find_casimir(closure):
    print(f"  trivial = {sol.trivial}, realization = {format_poly(sol.realization)}")

# so any invariant Hamiltonian built from this algebra at degree <= 2
# is a constant shift: the free body keeps no internal structure
