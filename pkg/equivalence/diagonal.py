"""
Diagonal equivalence of G_a (resp. H_a) with the a = 1 representative:
G_1 = diag(mu, nu, rho) o G_a o diag(l1, l2, l3).

Matching the eight coefficients of each family gives eight monomial
equations in the six scalars; three of them fix mu, nu, rho and the other
five are checked.
"""
import logging
from dataclasses import dataclass
from math import gcd

import numpy as np

from gf2m.conf import check_budget
from trivariate.quadform import make_family
from univariate.polys import require_parameter

from .monomial import MonomialMap, compose_monomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagWitness:
    mu: int
    nu: int
    rho: int
    l1: int
    l2: int
    l3: int

    @property
    def inner(self):
        return MonomialMap.diagonal(self.l1, self.l2, self.l3)

    @property
    def outer(self):
        return MonomialMap.diagonal(self.mu, self.nu, self.rho)


def diag_criterion(ctx, a):
    """a^(q^2 + q + 1) = 1"""
    require_parameter(a)
    return ctx.pow(a, ctx.d) == 1


def d0(ctx):
    """Order of the subgroup {a : a^d = 1} of F*"""
    return gcd(ctx.d, ctx.order)


def _q_plus_one(ctx, x):
    return ctx.mul_vec(ctx.frob_vec(x), x)


def _residual_equations(ctx, family, a, l1, l2, l3):
    """
    The five equations left after solving for mu, nu, rho, each as an
    array that must equal 1.
    """
    mul, inv = ctx.mul_vec, ctx.inv_vec
    l1q, l2q, l3q = ctx.frob_vec(l1), ctx.frob_vec(l2), ctx.frob_vec(l3)

    if family == 'G':
        mu = inv(_q_plus_one(ctx, l1))
        nu = inv(_q_plus_one(ctx, l2))
        rho = inv(_q_plus_one(ctx, l3))
        return (
            mul(mu, mul(a, mul(l1q, l3))),
            mul(mu, mul(l2, l3q)),
            mul(nu, mul(l1q, l3)),
            mul(rho, mul(l1, l2q)),
            mul(rho, mul(a, mul(l2q, l3))),
        ), (mu, nu, rho)

    mu = inv(_q_plus_one(ctx, l1))
    nu = inv(_q_plus_one(ctx, l3))
    rho = inv(_q_plus_one(ctx, l2))
    return (
        mul(mu, mul(a, mul(l1, l2q))),
        mul(mu, mul(l2, l3q)),
        mul(nu, mul(l1, l2q)),
        mul(rho, mul(l1q, l3)),
        mul(rho, mul(a, mul(l2q, l3))),
    ), (mu, nu, rho)


def witness_verifies(ctx, family, a, witness):
    """Symbolic check: composing the witness with the family member gives the a = 1 member"""
    composed = compose_monomial(make_family(ctx, family, a), witness.inner, witness.outer)
    return composed == make_family(ctx, family, 1)


def diag_search(ctx, family, a):
    """
    First diagonal witness in (l1, l2, l3) order, or None.

    Args:
        ctx: field context, m <= APNTRI_MAX_DIAG_M
        family: 'G' or 'H'
        a: family parameter

    Returns:
        DiagWitness or None
    """
    require_parameter(a)
    check_budget('diagonal search', ctx.m, 'MAX_DIAG_M')
    family = family.upper()
    units = ctx.nonzero_array()
    l2, l3 = (g.ravel() for g in np.meshgrid(units, units, indexing='ij'))

    for l1 in ctx.nonzero():
        l1_arr = np.full(len(l2), l1, dtype=np.int64)
        equations, (mu, nu, rho) = _residual_equations(ctx, family, a, l1_arr, l2, l3)
        ok = np.ones(len(l2), dtype=bool)
        for values in equations:
            ok &= values == 1
        for index in np.nonzero(ok)[0]:
            witness = DiagWitness(
                mu=int(mu[index]), nu=int(nu[index]), rho=int(rho[index]),
                l1=l1, l2=int(l2[index]), l3=int(l3[index]),
            )
            if witness_verifies(ctx, family, a, witness):
                return witness
            logger.error(f'Diagonal witness {witness} for {family}_{hex(a)} fails composition')
    return None


def diag_recipe_witness(ctx, family, a):
    """
    Closed-form witness with l2 = 1, or None when a^d != 1.

    G: l1 = a^-q, l3 = a^-(q+1); H: l1 = a^-(q+1), l3 = a^-1.
    """
    if not diag_criterion(ctx, a):
        return None
    family = family.upper()
    q = ctx.q
    if family == 'G':
        l1 = ctx.pow(a, -q)
        l3 = ctx.pow(a, -(q + 1))
    else:
        l1 = ctx.pow(a, -(q + 1))
        l3 = ctx.inv(a)
    l2 = 1
    arrays = [np.array([v], dtype=np.int64) for v in (l1, l2, l3)]
    _, (mu, nu, rho) = _residual_equations(ctx, family, a, *arrays)
    return DiagWitness(
        mu=int(mu[0]), nu=int(nu[0]), rho=int(rho[0]), l1=l1, l2=l2, l3=l3,
    )
