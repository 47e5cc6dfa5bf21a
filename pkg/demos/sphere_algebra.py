"""
Closing the algebra of a body confined to a sphere
==================================================

Seed the bracket closure with a free kinetic term and the sphere
constraint, then hunt for the quadratic invariant that commutes with
everything.  All coefficients stay exact rationals.
"""

from phasealg import (
    AlgebraElement,
    PhaseContext,
    close_algebra,
    convention_notes,
    find_casimir,
    format_poly,
    parse_expression,
    structure_constants,
    verify_invariant,
)

# three canonical pairs, unit mass and unit radius
ctx = PhaseContext(3, params={"m": 1, "r0": 1})
seeds = [
    AlgebraElement("H", parse_expression("(p1^2 + p2^2 + p3^2)/(2*m)", ctx)),
    AlgebraElement("U", parse_expression("(q1^2 + q2^2 + q3^2)/r0^2 - 1", ctx)),
]

closure = close_algebra(seeds)
print("closed basis:")
for elem in closure.basis:
    tag = "  (identity)" if elem.is_identity else ""
    print(f"  {elem.name} = {format_poly(elem.poly)}{tag}")

print("\nstructure constants {e_i, e_j} = sum_k c * e_k:")
names = [e.name for e in closure.basis]
for i, j, k, c in structure_constants(closure):
    print(f"  {{{names[i]}, {names[j]}}} -> {c} * {names[k]}")

# the bracket {U, g1} lands partly on the identity; the engine calls
# this out instead of hiding it
print("\ndiagnostics:")
for note in convention_notes(closure):
    print("  -", note)

# quadratic invariant search
print("\nquadratic invariant candidates:")
for sol in find_casimir(closure):
    kind = "trivial" if sol.trivial else "nontrivial"
    print(f"  [{kind}] realization = {format_poly(sol.realization)}")
    report = verify_invariant(sol.realization, closure)
    print(f"           brackets with all basis elements vanish: {report.passed}")
