"""
Monomial maps and their symbolic composition with a QuadForm3.

A MonomialMap sends (v_0, v_1, v_2) to the triple whose j-th entry is
scalars[j] * v_perm[j] ^ (2^twists[j]). Used on the input side it is a
substitution x_j := s_j x_perm(j)^(2^t_j); used on the output side it
permutes, twists and scales the three output polynomials.
"""
from dataclasses import dataclass

import numpy as np

from trivariate.quadform import QuadForm3, Triple, zero_coeff


@dataclass(frozen=True)
class MonomialMap:
    perm: tuple
    scalars: tuple
    twists: tuple

    @classmethod
    def identity(cls):
        return cls(perm=(0, 1, 2), scalars=(1, 1, 1), twists=(0, 0, 0))

    @classmethod
    def diagonal(cls, s0, s1, s2):
        return cls(perm=(0, 1, 2), scalars=(s0, s1, s2), twists=(0, 0, 0))

    @property
    def is_diagonal(self):
        return self.perm == (0, 1, 2) and not any(self.twists)

    def apply(self, ctx, v):
        return Triple(*(
            ctx.mul(self.scalars[j], ctx.frob(v[self.perm[j]], self.twists[j]))
            for j in range(3)
        ))

    def apply_vec(self, ctx, cols):
        return tuple(
            ctx.mul_vec(self.scalars[j], ctx.frob_vec(cols[self.perm[j]], self.twists[j]))
            for j in range(3)
        )

    def encode(self):
        """Sort key: perm, then twists, then scalars"""
        return (self.perm, self.twists, self.scalars)


def term_target(ctx, inner, i, j, t_out):
    """
    Where x_i^q x_j lands after substituting `inner` and raising the whole
    output to 2^t_out.

    Returns:
        (row, col) of the resulting x_row^q x_col monomial, or None when
        the exponents leave the x^q * x pattern
    """
    m = ctx.m
    alpha = (ctx.i + inner.twists[i] + t_out) % m
    beta = (inner.twists[j] + t_out) % m
    a, b = inner.perm[i], inner.perm[j]
    if alpha == ctx.i and beta == 0:
        return a, b
    if alpha == 0 and beta == ctx.i:
        return b, a
    return None


def pattern_holds(ctx, f, inner, k, t_out):
    """Every term of output k of f keeps the pattern under (inner, t_out)"""
    return all(
        term_target(ctx, inner, i, j, t_out) is not None
        for kk, i, j, _ in f.terms() if kk == k
    )


def compose_monomial(f, inner, outer):
    """
    outer o f o inner as a QuadForm3, or None if some term leaves the
    x_i^q x_j pattern.
    """
    ctx = f.ctx
    coeff = zero_coeff()
    for j in range(3):
        k = outer.perm[j]
        t_out = outer.twists[j]
        for kk, i, jj, c in f.terms():
            if kk != k:
                continue
            target = term_target(ctx, inner, i, jj, t_out)
            if target is None:
                return None
            s = ctx.mul(c, ctx.mul(ctx.frob_q(inner.scalars[i]), inner.scalars[jj]))
            row, col = target
            coeff[j][row][col] ^= ctx.mul(outer.scalars[j], ctx.frob(s, t_out))
    return QuadForm3(ctx, coeff)


def evaluate_composition(f, inner, outer, cols):
    """outer(f(inner(v))) evaluated directly, elementwise over coordinate arrays"""
    ctx = f.ctx
    inner_cols = inner.apply_vec(ctx, cols)
    return outer.apply_vec(ctx, f.eval_vec(*inner_cols))


def verify_witness(f, g, inner, outer, samples=10_000, seed=0):
    """
    g == outer o f o inner by evaluating both sides: on every input when
    there are at most `samples` of them, on a random sample otherwise.
    """
    ctx = f.ctx
    total = 1 << (3 * ctx.m)
    if total <= samples:
        packed = np.arange(total, dtype=np.int64)
    else:
        packed = np.random.default_rng(seed).integers(0, total, size=samples, dtype=np.int64)
    cols = g.unpack_vec(packed)
    left = g.eval_vec(*cols)
    right = evaluate_composition(f, inner, outer, cols)
    return all(np.array_equal(lhs, rhs) for lhs, rhs in zip(left, right))
