"""Classical and quantum brackets on phase-space polynomials.

Sign convention used throughout the package::

    {A, B} = sum_i ( dA/dq_i * dB/dp_i  -  dA/dp_i * dB/dq_i )

so {q_i, p_i} = +1.  Texts defining the bracket with the opposite ordering
see every odd nesting of brackets with flipped sign.

The quantum bracket is computed at the level of Weyl symbols: for
polynomials the sine series of bidifferential operators terminates, giving

    {A, B}_M = sum over odd k of (-1)^((k-1)/2) (hbar/2)^(k-1) / k! * Pi_k(A, B)

with Pi_k the k-th power of the two-sided derivative operator underlying the
Poisson bracket.  The symbol of the commutator is i*hbar*{A, B}_M, so the
bracket reduces to the Poisson bracket both for hbar -> 0 and whenever either
argument has total degree <= 2.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterator

from .poly import PhasePoly


def poisson_bracket(a: PhasePoly, b: PhasePoly) -> PhasePoly:
    a.ctx.require_same(b.ctx)
    ctx = a.ctx
    result = PhasePoly.zero(ctx)
    for i in range(ctx.dof):
        qi, pi = i, ctx.dof + i
        da_q = a.partial_derivative(qi)
        da_p = a.partial_derivative(pi)
        if not da_q.is_zero():
            db_p = b.partial_derivative(pi)
            if not db_p.is_zero():
                result = result + da_q * db_p
        if not da_p.is_zero():
            db_q = b.partial_derivative(qi)
            if not db_q.is_zero():
                result = result - da_p * db_q
    return result


def _compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    """All ways to write ``total`` as an ordered sum of ``slots`` nonnegatives."""
    if slots == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, slots - 1):
            yield (head,) + rest


def _bidifferential(a: PhasePoly, b: PhasePoly, k: int) -> PhasePoly:
    """Pi_k(A, B): expand the k-th power of the Poisson bidifferential.

    Each of the k factors picks either +d/dq_i (x) d/dp_i or -d/dp_i (x) d/dq_i;
    collecting repeats gives a multinomial sum over D-vectors s (plus branches)
    and t (minus branches) with |s| + |t| = k.
    """
    ctx = a.ctx
    dof = ctx.dof
    result = PhasePoly.zero(ctx)
    k_fact = factorial(k)
    for combo in _compositions(k, 2 * dof):
        s, t = combo[:dof], combo[dof:]
        order_a = s + t          # d_q^s d_p^t on A
        order_b = t + s          # d_q^t d_p^s on B
        da = a.derivative_multi(order_a)
        if da.is_zero():
            continue
        db = b.derivative_multi(order_b)
        if db.is_zero():
            continue
        weight = k_fact
        for part in combo:
            weight //= factorial(part)
        if sum(t) % 2:
            weight = -weight
        result = result + da * db * Fraction(weight)
    return result


def moyal_bracket(a: PhasePoly, b: PhasePoly) -> PhasePoly:
    a.ctx.require_same(b.ctx)
    ctx = a.ctx
    hbar = ctx.hbar
    if hbar == 0:
        return poisson_bracket(a, b)
    result = poisson_bracket(a, b)
    top = min(a.total_degree(), b.total_degree())
    k = 3
    while k <= top:
        coeff = Fraction((-1) ** ((k - 1) // 2), factorial(k)) * (hbar / 2) ** (k - 1)
        term = _bidifferential(a, b, k)
        if not term.is_zero():
            result = result + term * coeff
        k += 2
    return result
