"""Permutation bookkeeping: unshuffles, parities, Koszul signs.

Every sign-sensitive formula in the package funnels through this module, so
the convention is fixed in exactly one place.

* ``unshuffles(p, q)`` enumerates the permutations of ``0..p+q-1`` whose
  first ``p`` entries and last ``q`` entries are each increasing.
* ``perm_sign`` is ordinary permutation parity.
* ``koszul_sign`` adds the graded correction: a pair transposed by the
  permutation contributes ``(-1)**(d_a * d_b)`` where ``d_a, d_b`` are the
  homological degrees of the two entries.

Structure maps with ``i`` inputs carry homological degree ``i - 2``, and the
``n``-argument generalized Jacobi identity is assembled as

    sum over i + j = n + 1 of
        relation_coefficient(i, j)
        * sum over sigma in unshuffles(i, n - i) of
              perm_sign(sigma) * koszul_sign(sigma, degrees)
              * l_j(l_i(x_sigma[0], ..., x_sigma[i-1]), x_sigma[i], ...)

with ``relation_coefficient(i, j) = (-1)**(i * (j - 1))``.  With this choice
the two-argument identity reads ``l1(l2(x,y)) = l2(l1 x, y)
+ (-1)**deg(x) * l2(x, l1 y)`` and the three-argument one carries plus signs
on all three blocks.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterator, Sequence


def perm_sign(perm: Sequence[int]) -> int:
    """Parity of a sequence of distinct integers (+1 or -1)."""
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


def unshuffles(p: int, q: int) -> Iterator[tuple[int, ...]]:
    """Yield the (p, q)-unshuffles of 0..p+q-1 in lexicographic order."""
    universe = range(p + q)
    for head in combinations(universe, p):
        yield head + tuple(x for x in universe if x not in head)


def koszul_sign(perm: Sequence[int], degrees: Sequence[int]) -> int:
    """Sign collected while permuting graded symbols into perm's order.

    ``degrees[k]`` is the homological degree of the argument originally in
    slot ``k``; only pairs of odd-degree arguments contribute.
    """
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b] and degrees[perm[a]] % 2 and degrees[perm[b]] % 2:
                sign = -sign
    return sign


def relation_coefficient(i: int, j: int) -> int:
    """Front coefficient of the (i, j) block in the n-argument identity."""
    return (-1) ** (i * (j - 1))
