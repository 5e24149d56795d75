"""Parity subgroups H_A and their intersections, decided over GF(2).

A subset A of N_k = {1, ..., k+1} is stored as an int bitmask with bit i-1 set
for index i. H_A is the set of words whose letter counts over A sum to an even
number; since letter-count parity is additive under multiplication, the map
x -> (parity of w_x(a_1), ..., parity of w_x(a_{k+1})) is a homomorphism onto
GF(2)^{k+1}, and every question about intersections of H_A reduces to linear
algebra on the masks.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import InvalidFamilyError
from .freeword import Word


def mask_from_indices(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (int(i) - 1)
    return m


def mask_indices(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def parse_mask(text: str) -> int:
    """Parse ``"1,3,4"`` into a mask."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    return mask_from_indices(int(p) for p in parts)


def format_mask(mask: int) -> str:
    return ",".join(str(i) for i in mask_indices(mask))


def word_parity(x: Word) -> int:
    """Bitmask of generators occurring an odd number of times in x."""
    v = 0
    for i in x.letters:
        v ^= 1 << (i - 1)
    return v


def _check_mask(mask: int, k: int | None = None) -> None:
    if mask <= 0:
        raise InvalidFamilyError("masks must be nonempty subsets of N_k")
    if k is not None and mask >> (k + 1):
        raise InvalidFamilyError(f"mask {format_mask(mask)} exceeds N_k for k={k}")


def check_family(family: Sequence[int], k: int | None = None) -> None:
    for m in family:
        _check_mask(m, k)
    if len(set(family)) != len(family):
        raise InvalidFamilyError("masks in a family must be pairwise distinct")


def h_membership(x: Word, A: int) -> bool:
    _check_mask(A, x.k)
    return bin(word_parity(x) & A).count("1") % 2 == 0


def coset_signature(x: Word, family: Sequence[int]) -> tuple[int, ...]:
    v = word_parity(x)
    return tuple(bin(v & A).count("1") % 2 for A in family)


def gf2_rank(vectors: Iterable[int]) -> int:
    """Rank of a list of bit vectors over GF(2) (xor basis by leading bit)."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def is_contractible(family: Sequence[int]) -> tuple[bool, int | None]:
    """Whether dropping some member leaves the intersection unchanged.

    Returns ``(True, i0)`` with a 0-based witness index, or ``(False, None)``.
    Member i0 can be dropped exactly when its mask lies in the span of the
    others, because the intersection is the kernel of the signature map and
    its kernel depends only on the span of the masks.
    """
    check_family(family)
    full = gf2_rank(family)
    if full == len(family):
        return False, None
    for i0 in range(len(family)):
        rest = [m for j, m in enumerate(family) if j != i0]
        if gf2_rank(rest) == full:
            return True, i0
    raise AssertionError("dependent family without a removable member")


def intersection_index(family: Sequence[int]) -> int:
    """Index of the intersection of the H_A over the family: 2^rank."""
    check_family(family)
    return 2 ** gf2_rank(family)


def span(family: Iterable[int]) -> frozenset[int]:
    """All nonzero vectors in the GF(2) span."""
    out = {0}
    for m in family:
        out |= {v ^ m for v in out}
    return frozenset(out - {0})


def nonzero_masks(k: int) -> range:
    return range(1, 2 ** (k + 1))


def independent_triples(k: int) -> Iterable[tuple[int, int, int]]:
    """Ordered triples of nonempty masks that are independent over GF(2)."""
    for a, b, c in itertools.permutations(nonzero_masks(k), 3):
        if c != a ^ b:
            yield a, b, c


def three_dim_spans(k: int) -> list[frozenset[int]]:
    """Every 3-dimensional subspace of GF(2)^{k+1}, by explicit enumeration."""
    seen: set[frozenset[int]] = set()
    for a, b, c in itertools.combinations(nonzero_masks(k), 3):
        if c != a ^ b:
            seen.add(span((a, b, c)))
    return sorted(seen, key=sorted)


def span_basis(sp: frozenset[int]) -> tuple[int, int, int]:
    """Least independent triple (in increasing order) spanning ``sp``."""
    for a, b, c in itertools.combinations(sorted(sp), 3):
        if c != a ^ b:
            return a, b, c
    raise ValueError("not a 3-dimensional span")


def distinct_triple_intersections(k: int) -> int:
    """Number of distinct subgroups H_A1 ∩ H_A2 ∩ H_A3 with independent masks."""
    if k < 2:
        return 0
    return len(three_dim_spans(k))
