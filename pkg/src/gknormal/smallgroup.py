"""Finite groups of small order as explicit multiplication tables.

Element ids are 0-based and id 0 is always the identity. The catalog holds one
representative per isomorphism class for every order from 1 to 12.
"""

from __future__ import annotations

import functools
import itertools
import json
import re
from collections import Counter, deque
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Callable, Hashable, Iterator, Sequence

import numpy as np

from .errors import ClosureOverflowError, GroupAxiomError, UnsupportedOrderError

PERM_CLOSURE_BOUND = 64
MAX_CATALOG_ORDER = 12


@dataclass(frozen=True, eq=False)
class GroupTable:
    order: int
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    iso_label: str | None = None

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.int64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.table)

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverses[x]

    def label_to_id(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not an element of {self.name}") from None

    @property
    def name(self) -> str:
        return self.iso_label or f"<group of order {self.order}>"

    def __repr__(self) -> str:
        return f"GroupTable({self.name}, order={self.order})"


def audit(G: GroupTable) -> None:
    """Raise GroupAxiomError unless the table is a group with identity 0."""
    n = G.order
    T = G.table
    if len(T) != n or any(len(row) != n for row in T) or len(G.labels) != n:
        raise GroupAxiomError("table shape does not match order")
    full = set(range(n))
    for x in range(n):
        if T[0][x] != x or T[x][0] != x:
            raise GroupAxiomError(f"id 0 is not an identity (fails at {x})")
        if set(T[x]) != full:
            raise GroupAxiomError(f"row {x} is not a permutation")
        if {T[y][x] for y in range(n)} != full:
            raise GroupAxiomError(f"column {x} is not a permutation")
    arr = np.array(T, dtype=np.int64)
    # (xy)z == x(yz) for all triples, vectorized
    lhs = arr[arr[:, :, None], np.arange(n)[None, None, :]]
    rhs = arr[np.arange(n)[:, None, None], arr[None, :, :]]
    if not np.array_equal(lhs, rhs):
        bad = np.argwhere(lhs != rhs)[0]
        raise GroupAxiomError(f"associativity fails at triple {tuple(int(v) for v in bad)}")


def _build(
    elements: Sequence[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    labels: Sequence[str],
    iso_label: str | None = None,
) -> GroupTable:
    index = {e: i for i, e in enumerate(elements)}
    table = tuple(tuple(index[mul(x, y)] for y in elements) for x in elements)
    G = GroupTable(len(elements), table, tuple(labels), iso_label)
    audit(G)
    return G


def _power_label(sym: str, i: int) -> str:
    if i == 0:
        return ""
    return sym if i == 1 else f"{sym}^{i}"


def make_cyclic(n: int) -> GroupTable:
    if n < 1:
        raise ValueError("n must be >= 1")
    labels = ["e"] + [_power_label("g", i) for i in range(1, n)]
    return _build(range(n), lambda x, y: (x + y) % n, labels, f"Z{n}")


def make_dihedral(m: int) -> GroupTable:
    """Dihedral group of order 2m: <a, b | a^m, b^2, ba = a^{-1} b>.

    Ids 0..m-1 are a^0..a^{m-1}; ids m..2m-1 are b, ab, ..., a^{m-1}b.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    elements = [(i, s) for s in (0, 1) for i in range(m)]

    def mul(x, y):
        (i, s), (j, t) = x, y
        return ((i + (j if s == 0 else -j)) % m, (s + t) % 2)

    labels = [(_power_label("a", i) + ("b" if s else "")) or "e" for i, s in elements]
    return _build(elements, mul, labels, f"D{m}")


def make_dicyclic(n: int) -> GroupTable:
    """Dicyclic group of order 4n: <a, b | a^{2n}, b^2 = a^n, ba = a^{-1} b>."""
    if n < 2:
        raise ValueError("n must be >= 2")
    m = 2 * n
    elements = [(i, s) for s in (0, 1) for i in range(m)]

    def mul(x, y):
        (i, s), (j, t) = x, y
        e = i + (j if s == 0 else -j) + (n if s == t == 1 else 0)
        return (e % m, (s + t) % 2)

    labels = [(_power_label("a", i) + ("b" if s else "")) or "e" for i, s in elements]
    return _build(elements, mul, labels, "Q8" if n == 2 else f"Dic{n}")


def make_quaternion8() -> GroupTable:
    return make_dicyclic(2)


def make_elementary_abelian2(m: int) -> GroupTable:
    """(Z/2)^m; id bits name the generators a, b, c, ... (ids compose by XOR)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    names = "abcdefgh"
    labels = ["".join(names[j] for j in range(m) if x >> j & 1) or "e" for x in range(2**m)]
    iso = {1: "Z2", 2: "K4", 3: "K8"}.get(m, f"Z2^{m}")
    return _build(range(2**m), lambda x, y: x ^ y, labels, iso)


def perm_from_cycles(cycles: Sequence[Sequence[int]], n: int) -> tuple[int, ...]:
    """Convert 1-based cycle notation over {1..n} into a 0-based image tuple."""
    img = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            img[a - 1] = b - 1
    return tuple(img)


def make_perm_group(
    gens: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    bound: int = PERM_CLOSURE_BOUND,
    iso_label: str | None = None,
) -> GroupTable:
    """Close permutations (0-based image tuples) under composition.

    The product p*q applies p first, then q. Elements are numbered in BFS
    order from the identity and labelled by a shortest word in the generator
    names, e.g. ``a*b*a``.
    """
    gens = [tuple(g) for g in gens]
    degree = len(gens[0]) if gens else 0
    if any(len(g) != degree for g in gens):
        raise ValueError("permutations must act on a common domain")
    if names is None:
        names = [chr(ord("a") + i) for i in range(len(gens))]
    ident = tuple(range(degree))

    def compose(p, q):
        return tuple(q[p[i]] for i in range(degree))

    words = {ident: "e"}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g, nm in zip(gens, names):
            q = compose(p, g)
            if q not in words:
                words[q] = nm if words[p] == "e" else f"{words[p]}*{nm}"
                if len(words) > bound:
                    raise ClosureOverflowError(f"permutation closure exceeds bound {bound}")
                queue.append(q)
    elements = list(words)
    return _build(elements, compose, [words[p] for p in elements], iso_label)


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    elements = [(x, y) for x in range(G.order) for y in range(H.order)]
    labels = [
        "e" if x == y == 0 else f"({G.labels[x]},{H.labels[y]})" for x, y in elements
    ]
    iso = f"{G.iso_label}x{H.iso_label}" if G.iso_label and H.iso_label else None
    return _build(elements, lambda p, q: (G.mul(p[0], q[0]), H.mul(p[1], q[1])), labels, iso)


def element_order(G: GroupTable, x: int) -> int:
    n, y = 1, x
    while y != 0:
        y = G.table[y][x]
        n += 1
    return n


def order_profile(G: GroupTable) -> tuple[tuple[int, int], ...]:
    """Sorted multiset of element orders, as (order, multiplicity) pairs."""
    return tuple(sorted(Counter(element_order(G, x) for x in range(G.order)).items()))


def involution_ids(G: GroupTable) -> frozenset[int]:
    """All x with x^2 = e, identity included."""
    return frozenset(x for x in range(G.order) if G.table[x][x] == 0)


def subgroup_closure(G: GroupTable, seeds) -> frozenset[int]:
    seeds = list(dict.fromkeys(seeds))
    seen = {0}
    queue = deque([0])
    while queue:
        g = queue.popleft()
        for s in seeds:
            h = G.table[g][s]
            if h not in seen:
                seen.add(h)
                queue.append(h)
    return frozenset(seen)


def generating_sequence(G: GroupTable) -> tuple[int, ...]:
    """A short generating sequence; elements of large order are tried first."""
    by_order = sorted(range(1, G.order), key=lambda x: (-element_order(G, x), x))
    gens: list[int] = []
    span = frozenset({0})
    for x in by_order:
        if len(span) == G.order:
            break
        if x not in span:
            gens.append(x)
            span = subgroup_closure(G, gens)
    return tuple(gens)


def extend_to_homomorphism(
    G: GroupTable, H: GroupTable, gens: Sequence[int], images: Sequence[int]
) -> tuple[int, ...] | None:
    """Extend gens -> images to a map G -> H; None if it is not well defined.

    ``gens`` must generate G.
    """
    f = [-1] * G.order
    f[0] = 0
    queue = deque([0])
    TG, TH = G.table, H.table
    while queue:
        g = queue.popleft()
        fg = f[g]
        for s, t in zip(gens, images):
            ng, nh = TG[g][s], TH[fg][t]
            if f[ng] < 0:
                f[ng] = nh
                queue.append(ng)
            elif f[ng] != nh:
                return None
    return tuple(f)


def isomorphisms(G: GroupTable, H: GroupTable) -> Iterator[tuple[int, ...]]:
    """Every isomorphism G -> H as an id mapping, by generator-image backtracking."""
    if G.order != H.order or order_profile(G) != order_profile(H):
        return
    gens = generating_sequence(G)
    h_orders = [element_order(H, y) for y in range(H.order)]
    candidates = [
        [y for y in range(H.order) if h_orders[y] == element_order(G, g)] for g in gens
    ]
    for images in itertools.product(*candidates):
        f = extend_to_homomorphism(G, H, gens, images)
        if f is not None and len(set(f)) == G.order:
            yield f


def isomorphic(G: GroupTable, H: GroupTable) -> tuple[bool, tuple[int, ...] | None]:
    """Return (True, lexicographically least witness) or (False, None)."""
    witness = min(isomorphisms(G, H), default=None)
    return witness is not None, witness


@functools.lru_cache(maxsize=None)
def automorphisms(G: GroupTable) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(isomorphisms(G, G)))


def _dic3() -> GroupTable:
    return make_dicyclic(3)


def _a4() -> GroupTable:
    return make_perm_group(
        [perm_from_cycles([(1, 2, 3)], 4), perm_from_cycles([(1, 2), (3, 4)], 4)],
        names=["x", "y"],
        iso_label="A4",
    )


def _catalog_builders() -> dict[int, list[Callable[[], GroupTable]]]:
    Z = make_cyclic
    return {
        1: [lambda: Z(1)],
        2: [lambda: Z(2)],
        3: [lambda: Z(3)],
        4: [lambda: Z(4), lambda: make_elementary_abelian2(2)],
        5: [lambda: Z(5)],
        6: [lambda: Z(6), lambda: make_dihedral(3)],
        7: [lambda: Z(7)],
        8: [
            lambda: Z(8),
            lambda: direct_product(Z(4), Z(2)),
            lambda: make_elementary_abelian2(3),
            lambda: make_dihedral(4),
            make_quaternion8,
        ],
        9: [lambda: Z(9), lambda: direct_product(Z(3), Z(3))],
        10: [lambda: Z(10), lambda: make_dihedral(5)],
        11: [lambda: Z(11)],
        12: [
            lambda: Z(12),
            lambda: direct_product(Z(2), Z(6)),
            _a4,
            lambda: make_dihedral(6),
            _dic3,
        ],
    }


@functools.lru_cache(maxsize=None)
def catalog(order: int) -> tuple[GroupTable, ...]:
    """One representative per isomorphism class of groups of this order."""
    if not 1 <= order <= MAX_CATALOG_ORDER:
        raise UnsupportedOrderError(f"catalog covers orders 1..{MAX_CATALOG_ORDER}, got {order}")
    return tuple(build() for build in _catalog_builders()[order])


def catalog_group(label: str) -> GroupTable:
    """The catalog representative with this label; D<m> for m > 6 is built on demand."""
    for n in range(1, MAX_CATALOG_ORDER + 1):
        for G in catalog(n):
            if G.iso_label == label:
                return G
    m = re.fullmatch(r"D(\d+)", label)
    if m:
        return _large_dihedral(int(m.group(1)))
    raise KeyError(f"unknown group label {label!r}")


@functools.lru_cache(maxsize=None)
def _large_dihedral(m: int) -> GroupTable:
    if 2 * m > PERM_CLOSURE_BOUND:
        raise UnsupportedOrderError(f"D{m} exceeds the size bound {PERM_CLOSURE_BOUND}")
    return make_dihedral(m)


@functools.lru_cache(maxsize=None)
def identify(G: GroupTable) -> tuple[GroupTable, tuple[int, ...]]:
    """Catalog representative isomorphic to G, with the least witness G -> rep.

    Groups beyond the catalog are accepted only when they carry a dihedral
    iso_label; they then serve as their own representative.
    """
    if G.order > MAX_CATALOG_ORDER:
        if G.iso_label and re.fullmatch(r"D\d+", G.iso_label):
            rep = catalog_group(G.iso_label)
            ok, w = isomorphic(G, rep)
            if ok:
                return rep, w
        raise UnsupportedOrderError(f"cannot identify a group of order {G.order}")
    for rep in catalog(G.order):
        ok, w = isomorphic(G, rep)
        if ok:
            return rep, w
    raise GroupAxiomError("group matches no catalog entry")


def with_iso_label(G: GroupTable) -> GroupTable:
    rep, _ = identify(G)
    return replace(G, iso_label=rep.iso_label)


def group_to_json(G: GroupTable) -> dict:
    return {"order": G.order, "labels": list(G.labels), "table": [list(r) for r in G.table]}


def group_from_json(data: dict | str) -> GroupTable:
    if isinstance(data, str):
        data = json.loads(data)
    G = GroupTable(
        int(data["order"]),
        tuple(tuple(int(v) for v in row) for row in data["table"]),
        tuple(data["labels"]),
    )
    audit(G)
    return G


# pi1 = (1,2)(3,4)(5,6), pi2 = (2,3)(4,5) as printed; their product is a
# 6-cycle, so they generate a dihedral group of order 12.
R10_PRINTED_PERMS = (
    perm_from_cycles([(1, 2), (3, 4), (5, 6)], 6),
    perm_from_cycles([(2, 3), (4, 5)], 6),
)
# Dropping the stray (5,6) leaves two reflections of a pentagon whose product
# is a 5-cycle: the intended group of order 10.
R10_PERMS = (
    perm_from_cycles([(1, 2), (3, 4)], 5),
    perm_from_cycles([(2, 3), (4, 5)], 5),
)


@functools.lru_cache(maxsize=None)
def make_r10() -> GroupTable:
    """R10 = <a, b> with a, b the pentagon reflections in ``R10_PERMS``.

    Elements are labelled by shortest words in a and b (``a*b*a`` etc.).
    """
    return make_perm_group(R10_PERMS, names=("a", "b"), iso_label="R10")
