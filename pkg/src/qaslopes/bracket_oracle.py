"""Independent link determinant via the Kauffman bracket state sum.

This is the cross-check for the Goeritz-matrix determinant and is kept out
of the public API: it exists for the test suite and the det-oracle sweep.

The determinant equals |<D>| evaluated at A = exp(i*pi/4): the writhe
normalization is a unit there, and the loop value -A^2 - A^(-2) vanishes,
so only single-loop states contribute.  The sum is accumulated exactly in
Z[zeta_8] (integer 4-vectors with zeta^4 = -1) and the squared magnitude
must come out as a perfect-square rational integer, which doubles as an
internal consistency check on the state sum.
"""

from __future__ import annotations

import math


def _loops_of_state(crossings, labels, bits):
    parent = {x: x for x in labels}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for k, t in enumerate(crossings):
        if bits & (1 << k):
            union(t[0], t[3])
            union(t[1], t[2])
        else:
            union(t[0], t[1])
            union(t[2], t[3])
    return len({find(x) for x in labels})


def bracket_determinant(diagram):
    """|H1| of the double branched cover, from the bracket state sum."""
    crossings = diagram.crossings
    n = len(crossings)
    if n == 0:
        return 1 if diagram.free_loops == 1 else 0
    if diagram.free_loops:
        return 0  # every state then has >= 2 loops
    labels = list(diagram.arc_ends)
    vec = [0, 0, 0, 0]  # coefficients of 1, z, z^2, z^3 with z^4 = -1
    for bits in range(1 << n):
        if _loops_of_state(crossings, labels, bits) != 1:
            continue
        sigma = n - 2 * bits.bit_count()
        e = sigma % 8
        if e < 4:
            vec[e] += 1
        else:
            vec[e - 4] -= 1
    # |v|^2 = v * conj(v); conj maps z^k -> -z^(4-k) for k = 1, 2, 3.
    a, b, c, d = vec
    conj = (a, -d, -c, -b)
    prod = [0, 0, 0, 0, 0, 0, 0]
    for i, x in enumerate(vec):
        for j, y in enumerate(conj):
            prod[i + j] += x * y
    r = [prod[k] - prod[k + 4] if k < 3 else prod[k] for k in range(4)]
    # A real value in Z[zeta_8] has the form u + w*sqrt(2) with
    # sqrt(2) = z - z^3; the determinant squared is a plain integer.
    assert r[2] == 0 and r[1] == -r[3], "state sum is not real: %r" % (r,)
    assert r[1] == 0, "determinant squared is irrational: %r" % (r,)
    det2 = r[0]
    det = math.isqrt(det2)
    assert det * det == det2, "determinant squared %d is not a square" % det2
    return det
