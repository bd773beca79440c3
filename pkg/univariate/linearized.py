"""
The linearized polynomial L_a(S) = S^(q^3) + a S^q + S and the
companion-matrix test for a nontrivial kernel.
"""
from gf2m import linalg

from .polys import require_parameter


def linearized_eval(ctx, a, s):
    require_parameter(a)
    sq = ctx.frob_q(s)
    sq3 = ctx.frob_q(ctx.frob_q(sq))
    return sq3 ^ ctx.mul(a, sq) ^ s


def linearized_images(ctx, a):
    """Images of the polynomial-basis vectors alpha^k"""
    return [linearized_eval(ctx, a, 1 << k) for k in range(ctx.m)]


def linearized_kernel_dim(ctx, a):
    """F_2-dimension of ker L_a, from the m x m system over F_2"""
    return linalg.nullity(linearized_images(ctx, a))


# ============ 3 x 3 MATRICES OVER THE FIELD ============

def identity3():
    return [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def mat_mul3(ctx, left, right):
    return [
        [
            ctx.mul(left[r][0], right[0][c])
            ^ ctx.mul(left[r][1], right[1][c])
            ^ ctx.mul(left[r][2], right[2][c])
            for c in range(3)
        ]
        for r in range(3)
    ]


def det3(ctx, mat):
    """Cofactor expansion along the first row (signs vanish in characteristic 2)"""
    (a, b, c), (d, e, f), (g, h, k) = mat
    mul = ctx.mul
    return (
        mul(a, mul(e, k) ^ mul(f, h))
        ^ mul(b, mul(d, k) ^ mul(f, g))
        ^ mul(c, mul(d, h) ^ mul(e, g))
    )


def companion_matrix(ctx, a, k=0):
    """Companion matrix of L_a twisted k times: middle column entry a^(q^k)"""
    return [
        [0, 0, 1],
        [1, 0, ctx.frob(a, ctx.i * k)],
        [0, 1, 0],
    ]


def companion_product(ctx, a):
    """A_L = C C^sigma ... C^(sigma^(m-1)), multiplied left to right"""
    require_parameter(a)
    product = identity3()
    for k in range(ctx.m):
        product = mat_mul3(ctx, product, companion_matrix(ctx, a, k))
    return product


def companion_product_test(ctx, a):
    """Whether A_L - I is singular, i.e. L_a has a nontrivial kernel"""
    product = companion_product(ctx, a)
    for r in range(3):
        product[r][r] ^= 1
    return det3(ctx, product) == 0
