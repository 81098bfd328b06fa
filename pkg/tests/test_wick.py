from fractions import Fraction

import pytest

from wickred.poly import LaurentElem, VarSpace, is_radial
from wickred.sampling import rand_homogeneous, rand_invariant, rand_poly, rand_radial
from wickred.scalar import gauss
from wickred.series import Series, UnivarPoly
from wickred.wick import (
    StarContext,
    commutator_check,
    exp_symbol_product,
    m_op,
    op_calm,
    op_euler_zwb,
    op_h,
    op_n,
    poisson,
    product_formula_check,
    radial_elem,
    radial_invariant_expansion,
    radial_star,
    restrict_diagonal,
    tensor,
    wick_product,
    wick_product_elems,
)


def zvar(sp, k):
    return LaurentElem.variable(sp, sp.iz(k))


def zbvar(sp, k):
    return LaurentElem.variable(sp, sp.izb(k))


def test_context_validation(sp1):
    with pytest.raises(ValueError):
        StarContext(space=sp1, K=0)
    with pytest.raises(ValueError):
        StarContext(space=sp1, D=(2,))
    with pytest.raises(ValueError):
        StarContext(space=sp1, mu=Fraction(1, 2))


def test_wick_on_coordinates(ctx1, sp1):
    for i in range(2):
        for j in range(2):
            prod = wick_product_elems(zvar(sp1, i), zbvar(sp1, j), ctx1)
            assert prod.coeffs[0] == zvar(sp1, i) * zbvar(sp1, j)
            expected = LaurentElem.one_of(sp1) if i == j else LaurentElem.zero_of(sp1)
            assert prod.coeffs[1] == expected
            assert all(c.is_zero() for c in prod.coeffs[2:])
            rev = wick_product_elems(zbvar(sp1, j), zvar(sp1, i), ctx1)
            assert rev.coeffs[0] == zvar(sp1, i) * zbvar(sp1, j)
            assert all(c.is_zero() for c in rev.coeffs[1:])


def test_wick_x_star_x(ctx1, sp1):
    # the Wick product of x with x^r is x^(r+1) + lambda r x^r; here r = 1
    x = LaurentElem.x_power(sp1, 1)
    prod = wick_product_elems(x, x, ctx1)
    assert prod.coeffs[0] == x * x
    assert prod.coeffs[1] == x
    assert all(c.is_zero() for c in prod.coeffs[2:])
    # and r = 2
    prod = wick_product_elems(x, x * x, ctx1)
    assert prod.coeffs[0] == x.pow(3)
    assert prod.coeffs[1] == (x * x).scale(2)


def test_wick_indefinite_metric(ctx1d, sp1d):
    prod = wick_product_elems(zvar(sp1d, 0), zbvar(sp1d, 0), ctx1d)
    assert prod.coeffs[1] == LaurentElem.scalar(sp1d, -1)
    prod = wick_product_elems(zvar(sp1d, 1), zbvar(sp1d, 1), ctx1d)
    assert prod.coeffs[1] == LaurentElem.one_of(sp1d)


def test_poisson(ctx1, sp1):
    for i in range(2):
        for j in range(2):
            br = poisson(zvar(sp1, i), zbvar(sp1, j), ctx1)
            expected = LaurentElem.scalar(sp1, gauss(0, -2)) if i == j else LaurentElem.zero_of(sp1)
            assert br == expected
    x = LaurentElem.x_power(sp1, 1)
    F = zvar(sp1, 0) * zbvar(sp1, 0)
    assert poisson(x, F, ctx1).is_zero()
    assert poisson(F, F, ctx1).is_zero()


def test_commutator_check(ctx1, sp1):
    res = commutator_check(zvar(sp1, 0), zbvar(sp1, 1), ctx1)
    assert res.coeffs[1].is_zero()
    F = rand_poly(sp1, __import__("random").Random(3), max_deg=2)
    assert commutator_check(F, F, ctx1).is_zero()
    x = LaurentElem.x_power(sp1, 1)
    res = commutator_check(x, zvar(sp1, 0) * zbvar(sp1, 0), ctx1)
    assert res.coeffs[1].is_zero()


def test_m_ops(ctx1, sp1, phi):
    g = rand_invariant(sp1, __import__("random").Random(1))
    assert m_op(phi, g, 0, ctx1) == phi * g
    assert m_op(phi, phi, 1, ctx1) == phi - phi * phi
    one = LaurentElem.one_of(sp1)
    for r in (1, 2, 3):
        assert m_op(one, g, r, ctx1).is_zero()


def test_radial_star(ctx1, sp1):
    x = UnivarPoly([0, 1])
    prod = radial_star(x, x, ctx1)
    assert prod.coeffs[0] == UnivarPoly([0, 0, 1])
    assert prod.coeffs[1] == UnivarPoly([0, 1])
    one = UnivarPoly([1])
    rho = UnivarPoly([2, 0, 3])
    assert radial_star(one, rho, ctx1).coeffs[0] == rho
    assert all(c.is_zero() for c in radial_star(one, rho, ctx1).coeffs[1:])
    x2 = UnivarPoly([0, 0, 1])
    prod = radial_star(x2, x2, ctx1)
    assert prod.coeffs[0] == UnivarPoly([0, 0, 0, 0, 1])
    assert prod.coeffs[1] == UnivarPoly([0, 0, 0, 4])
    assert prod.coeffs[2] == UnivarPoly([0, 0, 2])
    # consistency with the Wick product of the corresponding elements
    xe = LaurentElem.x_power(sp1, 1)
    wick = wick_product_elems(xe, xe, ctx1)
    for m, p in enumerate(radial_star(x, x, ctx1).coeffs):
        assert p.subst_elem(xe) == wick.coeffs[m]


def test_exp_symbol_product(ctx1):
    assert exp_symbol_product(0, 3, ctx1).is_zero()
    assert exp_symbol_product(1, 1, ctx1).is_zero()
    assert exp_symbol_product(1, -1, ctx1).is_zero()
    assert exp_symbol_product(Fraction(1, 2), Fraction(2, 3), ctx1).is_zero()


def _radial_product_suite(ctx, rng, tuples):
    sp = ctx.space
    for _ in range(tuples):
        rho1, rho2 = rand_radial(rng), rand_radial(rng)
        R1, R2 = radial_elem(rho1, sp), radial_elem(rho2, sp)
        F = rand_invariant(sp, rng)
        f, g = rand_homogeneous(sp, rng), rand_homogeneous(sp, rng)
        # (i) radial * invariant via x-derivative expansion, both orders
        lhs = wick_product_elems(R1, F, ctx)
        assert (lhs - radial_invariant_expansion(rho1, F, ctx)).is_zero()
        assert (lhs - wick_product_elems(F, R1, ctx)).is_zero()
        # (ii) radial * radial commute and stay radial
        r12 = wick_product_elems(R1, R2, ctx)
        assert (r12 - wick_product_elems(R2, R1, ctx)).is_zero()
        assert all(is_radial(c) for c in r12.coeffs)
        # (iii) radial * homogeneous is pointwise
        pw = Series.const(R1 * f, ctx.K)
        assert (wick_product_elems(R1, f, ctx) - pw).is_zero()
        assert (wick_product_elems(f, R1, ctx) - pw).is_zero()
        # (iv) M_r homogeneous and the (lambda/x)^r expansion
        fg = wick_product_elems(f, g, ctx)
        fact = 1
        for r in range(ctx.K + 1):
            if r:
                fact *= r
            mr = m_op(f, g, r, ctx)
            assert mr.is_zero() or mr.is_homogeneous()
            assert fg.coeffs[r] == mr.mul_xpow(-r).scale(Fraction(1, fact))


def test_radial_product_relations(ctx1, rng):
    _radial_product_suite(ctx1, rng, 3)


def test_radial_product_relations_indefinite(ctx1d, rng):
    _radial_product_suite(ctx1d, rng, 3)


def test_associativity_small(rng):
    for n in (1, 2):
        for make in (VarSpace.cpn, VarSpace.dn):
            ctx = StarContext(space=make(n), K=6)
            F, G, H = (rand_poly(ctx.space, rng, max_deg=3) for _ in range(3))
            left = wick_product(wick_product_elems(F, G, ctx), Series.const(H, ctx.K), ctx)
            right = wick_product(Series.const(F, ctx.K), wick_product_elems(G, H, ctx), ctx)
            assert (left - right).is_zero()


def _m_op_tuple_oracle(F, G, r, ctx):
    """Brute force over all index tuples (i1..ir), no multinomial weights."""
    from itertools import product as iproduct

    sp = ctx.space
    acc = LaurentElem.zero_of(sp)
    for tup in iproduct(range(sp.nv), repeat=r):
        sign = 1
        a, b = F, G
        for i in tup:
            if sp.metric[i] == -1:
                sign = -sign
            a = a.diff(sp.iz(i))
            b = b.diff(sp.izb(i))
        term = a * b
        acc = acc + (term if sign == 1 else -term)
    return acc.mul_xpow(r)


def test_m_op_against_tuple_oracle(rng):
    for n in (1, 2):
        for make in (VarSpace.cpn, VarSpace.dn):
            ctx = StarContext(space=make(n), K=4)
            F = rand_invariant(ctx.space, rng)
            G = rand_homogeneous(ctx.space, rng)
            for r in (1, 2, 3):
                assert m_op(F, G, r, ctx) == _m_op_tuple_oracle(F, G, r, ctx)


def test_first_order_commutator_fifty_pairs(ctx1, ctx1d, rng):
    for ctx in (ctx1, ctx1d):
        for _ in range(25):
            F = rand_poly(ctx.space, rng, max_deg=2)
            G = rand_poly(ctx.space, rng, max_deg=2)
            assert commutator_check(F, G, ctx).coeffs[1].is_zero()


def test_wick_space_mismatch(ctx1, sp1d):
    F = Series.const(LaurentElem.x_power(sp1d, 1), ctx1.K)
    with pytest.raises(ValueError):
        wick_product(F, F, ctx1)


def test_momentum_commutator_no_higher_orders(ctx1, sp1, rng):
    # F * J - J * F = (i lambda / 2){F, J} exactly, all higher orders zero
    J = LaurentElem.x_power(sp1, 1).scale(Fraction(-1, 2))
    for _ in range(5):
        F = rand_poly(sp1, rng, max_deg=3)
        comm = wick_product_elems(F, J, ctx1) - wick_product_elems(J, F, ctx1)
        br = Series.const(poisson(F, J, ctx1).scale(gauss(0, Fraction(1, 2))), ctx1.K)
        assert (comm - br.times_lambda(1)).is_zero()
    Finv = rand_invariant(sp1, rng)
    comm = wick_product_elems(Finv, J, ctx1) - wick_product_elems(J, Finv, ctx1)
    assert comm.is_zero()
    assert poisson(Finv, J, ctx1).is_zero()


# ----------------------------------------------------------------------
# two-point operators


def test_two_point_restriction(ctx1, sp1, phi):
    f, g = phi, phi
    T = tensor(f, g)
    assert restrict_diagonal(T) == f * g
    assert (restrict_diagonal(op_calm(T, 1, ctx1)) - m_op(f, g, 1, ctx1)).is_zero()
    assert (restrict_diagonal(op_n(T, ctx1)) - m_op(f, g, 1, ctx1)).is_zero()


def test_two_point_errors(ctx1, sp1, phi):
    with pytest.raises(ValueError):
        op_n(phi, ctx1)
    with pytest.raises(ValueError):
        op_h(phi)


def test_h_annihilates_doubly_homogeneous(ctx1, sp1, rng):
    f, g = rand_homogeneous(sp1, rng), rand_homogeneous(sp1, rng)
    T = tensor(f, g)
    assert T.is_doubly_homogeneous()
    assert op_h(T).is_zero()
    assert op_euler_zwb(T).is_zero()


def test_recursion_on_tensor_inputs(ctx1, sp1, rng):
    # calM_2 = (N - 1(n-1) - 1 H) calM_1 on f (x) g with homogeneous f, g
    n = ctx1.n
    f, g = rand_homogeneous(sp1, rng), rand_homogeneous(sp1, rng)
    T = tensor(f, g)
    m1 = op_calm(T, 1, ctx1)
    rhs = op_n(m1, ctx1) - m1.scale(1 * (n - 1)) - op_h(m1)
    assert (op_calm(T, 2, ctx1) - rhs).is_zero()


def test_recursion_general_inputs(rng):
    # on arbitrary two-point elements the Euler weight of the contraction
    # prefactor (z and wb) drives the recursion; H agrees with it only on
    # the doubly homogeneous class
    for n in (1, 2):
        ctx = StarContext(space=VarSpace.cpn(n), K=3)
        for _ in range(3):
            T = tensor(rand_poly(ctx.space, rng, max_deg=2), rand_invariant(ctx.space, rng))
            for r in (1, 2):
                mr = op_calm(T, r, ctx)
                rhs = op_n(mr, ctx) - mr.scale(r * (n - r)) - op_euler_zwb(mr).scale(r)
                assert (op_calm(T, r + 1, ctx) - rhs).is_zero()


def test_product_formula(rng):
    for n in (1, 2):
        for make in (VarSpace.cpn, VarSpace.dn):
            ctx = StarContext(space=make(n), K=4)
            f = rand_homogeneous(ctx.space, rng)
            g = rand_homogeneous(ctx.space, rng)
            for r in (1, 2, 3):
                assert product_formula_check(r, f, g, ctx).is_zero()
