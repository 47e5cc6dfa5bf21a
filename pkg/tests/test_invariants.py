import random
from fractions import Fraction

import pytest

from conftest import cm_closure, sphere_closure
from phasealg import (
    AlgebraElement,
    AnsatzTooLargeError,
    ContextMismatchError,
    PhaseContext,
    PhasePoly,
    close_algebra,
    find_casimir,
    find_center,
    format_poly,
    monomials_up_to_degree,
    parse_expression,
    verify_invariant,
)


def angular_momentum_square(ctx):
    """Sum over i < j of (q_i p_j - q_j p_i)^2, built term by term."""
    total = PhasePoly.zero(ctx)
    d = ctx.dof
    for i in range(d):
        for j in range(i + 1, d):
            qi = PhasePoly.variable(ctx, i)
            qj = PhasePoly.variable(ctx, j)
            pi = PhasePoly.variable(ctx, d + i)
            pj = PhasePoly.variable(ctx, d + j)
            total = total + (qi * pj - qj * pi) ** 2
    return total


def test_sphere_casimir_exact():
    cl = sphere_closure()
    sols = find_casimir(cl)
    nontrivial = [s for s in sols if not s.trivial]
    assert len(nontrivial) == 1
    sol = nontrivial[0]
    assert sol.generator_names == ("H", "U", "g1")
    assert sol.quadratic == {(0, 1): Fraction(1), (2, 2): Fraction(-1, 2)}
    assert sol.linear == {0: Fraction(1)}
    assert sol.constant == 0
    # H(U + 1) - g1^2/2 is half the squared angular momentum
    assert sol.realization == angular_momentum_square(cl.ctx) / 2
    assert verify_invariant(sol.realization, cl).passed


def test_sphere_casimir_tracks_parameters():
    rng = random.Random(7321)
    for _ in range(3):
        m = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        r0 = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        cl = sphere_closure(m=m, r0=r0)
        sol = [s for s in find_casimir(cl) if not s.trivial][0]
        scale = m * r0 * r0
        assert sol.quadratic[(2, 2)] * scale * scale == -scale / 2
        assert sol.realization == angular_momentum_square(cl.ctx) / (2 * m * r0 * r0)
        report = verify_invariant(sol.realization, cl)
        assert report.passed
        assert len(report.residuals) == 4
        assert all(r.is_zero() for _, r in report.residuals)


def test_cm_casimir_all_trivial():
    cl = cm_closure()
    sols = find_casimir(cl)
    assert len(sols) == 2
    assert all(s.trivial for s in sols)
    # the H - (g1^2+g2^2+g3^2)/2 relation collapses to the zero polynomial
    assert any(s.realization.is_zero() for s in sols)
    assert any(s.realization == 1 for s in sols)


def test_heisenberg_casimir_only_constant():
    ctx = PhaseContext(1)
    cl = close_algebra(
        [
            AlgebraElement("Q", PhasePoly.variable(ctx, "q1")),
            AlgebraElement("P", PhasePoly.variable(ctx, "p1")),
        ]
    )
    sols = find_casimir(cl)
    assert len(sols) == 1
    assert sols[0].trivial
    assert sols[0].realization == 1


def test_sphere_center_contains_angular_momenta():
    cl = sphere_closure()
    center = find_center(cl, max_total_degree=2)
    assert center.degree == 2
    assert len(center.solutions) == 4
    rendered = sorted(format_poly(p) for p in center.solutions)
    assert rendered == [
        "-q1*p2 + q2*p1",
        "-q1*p3 + q3*p1",
        "-q2*p3 + q3*p2",
        "1",
    ]
    assert len(center.nonconstant()) == 3
    for p in center.solutions:
        assert verify_invariant(p, cl).passed


def test_cm_center_is_constants_only():
    cl = cm_closure()
    center = find_center(cl, max_total_degree=2)
    assert len(center.solutions) == 1
    assert center.solutions[0] == 1
    assert center.nonconstant() == ()


def test_monomials_up_to_degree():
    ctx = PhaseContext(1)
    monos = monomials_up_to_degree(ctx, 2)
    # 1, q1, p1, q1^2, q1*p1, p1^2
    assert len(monos) == 6
    assert monos[0] == (0, 0)
    assert sorted(monos) == sorted(
        [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    )
    assert monomials_up_to_degree(ctx, 0) == [(0, 0)]


def test_center_degree_zero_is_constant():
    cl = sphere_closure()
    center = find_center(cl, max_total_degree=0)
    assert len(center.solutions) == 1
    assert center.solutions[0] == 1


def test_center_rejects_bad_arguments():
    cl = sphere_closure()
    with pytest.raises(ValueError):
        find_center(cl, max_total_degree=-1)
    with pytest.raises(AnsatzTooLargeError):
        find_center(cl, max_total_degree=4, max_monomials=10)


def test_verify_invariant_failure():
    cl = sphere_closure()
    report = verify_invariant(PhasePoly.variable(cl.ctx, "q1"), cl)
    assert not report.passed
    # {q1, H} = p1/m does not vanish
    failing = dict(report.residuals)
    assert not failing["H"].is_zero()
    assert failing["1"].is_zero()


def test_verify_invariant_context_mismatch():
    cl = sphere_closure()
    other = PhaseContext(3)
    with pytest.raises(ContextMismatchError):
        verify_invariant(PhasePoly.variable(other, "q1"), cl)


def test_casimir_solutions_commute_with_everything():
    rng = random.Random(5150)
    for _ in range(2):
        m = Fraction(rng.randint(1, 5))
        r0 = Fraction(rng.randint(1, 5))
        cl = sphere_closure(m=m, r0=r0)
        for sol in find_casimir(cl):
            assert verify_invariant(sol.realization, cl).passed
