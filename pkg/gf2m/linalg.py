"""
Linear algebra over F_2 on bit-packed vectors.

A vector of length n is an int whose bit k is coordinate k. A linear map
is given by the list of images of the unit vectors e_0 .. e_{n-1}.
"""
import numpy as np


def rank(vectors):
    """Rank of the span of the given vectors"""
    pivots = {}
    for v in vectors:
        v = int(v)
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = v
                break
            v ^= pivots[top]
    return len(pivots)


def kernel_basis(images):
    """
    Basis of {x : sum of images[k] over set bits k of x = 0}.

    Each row is reduced together with the record of which unit vectors
    were combined; a row that reduces to zero yields a kernel vector.
    """
    pivots = {}
    basis = []
    for k, v in enumerate(images):
        v = int(v)
        combo = 1 << k
        while v:
            top = v.bit_length() - 1
            if top not in pivots:
                pivots[top] = (v, combo)
                break
            pivot, pivot_combo = pivots[top]
            v ^= pivot
            combo ^= pivot_combo
        if not v:
            basis.append(combo)
    return basis


def nullity(images):
    return len(images) - rank(images)


def apply(images, x):
    """Image of the packed vector x under the map"""
    out = 0
    k = 0
    while x:
        if x & 1:
            out ^= int(images[k])
        x >>= 1
        k += 1
    return out


def rank_batch(columns, nbits):
    """
    Ranks of many maps at once.

    Args:
        columns: list of int64 arrays; columns[k][s] is the image of e_k
            under the s-th map
        nbits: bit width of the images

    Returns:
        int64 array with one rank per map
    """
    count = len(columns[0]) if columns else 0
    basis = np.zeros((nbits, count), dtype=np.int64)
    ranks = np.zeros(count, dtype=np.int64)
    for column in columns:
        v = np.array(column, dtype=np.int64, copy=True)
        active = v != 0
        for bit in range(nbits - 1, -1, -1):
            hit = active & (((v >> bit) & 1) == 1)
            if not hit.any():
                continue
            row = basis[bit]
            fresh = hit & (row == 0)
            if fresh.any():
                row[fresh] = v[fresh]
                ranks += fresh
                active &= ~fresh
            reduce = hit & ~fresh
            v[reduce] ^= row[reduce]
            active &= v != 0
    return ranks
