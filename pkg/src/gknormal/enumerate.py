"""The explicit index-8 and index-10 families and their printed counts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from . import smallgroup as sg
from .errors import UnsupportedOrderError
from .parity import independent_triples, span_basis, three_dim_spans
from .quotients import (
    GeneratorAssignment,
    KernelDescriptor,
    PartitionSpec,
    canonical_descriptor,
    partition_hom_D4,
    partition_hom_R10,
    triple_hom,
)


def is_involution_generated(G: sg.GroupTable) -> bool:
    return len(sg.subgroup_closure(G, sg.involution_ids(G))) == G.order


def classify_quotient_groups(order: int) -> list[str]:
    """Catalog groups of this order that G_k can map onto.

    Any image of G_k is generated by the images of the a_i, which square to
    the identity, so exactly the involution-generated groups qualify.
    """
    return [G.iso_label for G in sg.catalog(order) if is_involution_generated(G)]


def ordered_partitions(k: int) -> Iterator[PartitionSpec]:
    """Every (zero class; class 1, class 2) of N_k with both classes nonempty."""
    for labels in itertools.product((0, 1, 2), repeat=k + 1):
        masks = [0, 0, 0]
        for i, c in enumerate(labels):
            masks[c] |= 1 << i
        if masks[1] and masks[2]:
            yield PartitionSpec(masks[0], (masks[1], masks[2]))


def count_ordered_partitions(k: int) -> int:
    return sum(1 for _ in ordered_partitions(k))


def formula_index8(k: int) -> int:
    return 8 ** (k + 1) - 6 * 4 ** (k + 1) + 3 ** (k + 1) + 9 * 2 ** (k + 1) - 5


def formula_index10(k: int) -> int:
    return 3 ** (k + 1) - 2 ** (k + 2) + 1


def formula_R(k: int) -> int:
    return 2 ** (k + 1) * (2 ** (k + 1) - 2) * (2 ** (k + 2) - 3)


@dataclass
class PaperFamilies:
    """Descriptor sets per family plus the labeled construction counts."""

    k: int
    index: int
    families: dict[str, frozenset[KernelDescriptor]]
    labeled_counts: dict[str, int] = field(default_factory=dict)

    @property
    def descriptors(self) -> frozenset[KernelDescriptor]:
        return frozenset().union(*self.families.values())

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "index": self.index,
            "families": {
                name: [d.to_json() for d in sorted(ds)] for name, ds in self.families.items()
            },
            "labeled_counts": dict(self.labeled_counts),
        }


def enumerate_paper_index8(k: int) -> PaperFamilies:
    """Kernels of the K8 triple maps (one per 3-dim span) and the D4 partition maps."""
    r_part = frozenset(
        canonical_descriptor(triple_hom(*span_basis(sp), k)) for sp in three_dim_spans(k)
    )
    partitions = list(ordered_partitions(k))
    d4_part = frozenset(canonical_descriptor(partition_hom_D4(p, k)) for p in partitions)
    return PaperFamilies(
        k,
        8,
        {"R": r_part, "D4": d4_part},
        {
            "R_ordered_triples": sum(1 for _ in independent_triples(k)),
            "R_spans": len(r_part),
            "D4_partitions": len(partitions),
        },
    )


def enumerate_paper_index10(k: int) -> PaperFamilies:
    partitions = list(ordered_partitions(k))
    part = frozenset(canonical_descriptor(partition_hom_R10(p, k)) for p in partitions)
    return PaperFamilies(k, 10, {"R10": part}, {"R10_partitions": len(partitions)})


def odd_index_impossible(n: int) -> tuple[bool, str]:
    """True when no group of odd order n is generated by involutions."""
    if n % 2 == 0 or n == 1 or not 1 < n <= sg.MAX_CATALOG_ORDER:
        raise UnsupportedOrderError(f"odd_index_impossible takes odd 3 <= n <= 11, got {n}")
    groups = sg.catalog(n)
    quotients = classify_quotient_groups(n)
    lines = [
        f"{G.iso_label}: {len(sg.involution_ids(G)) - 1} involutions" for G in groups
    ]
    verdict = not quotients
    return verdict, f"order {n}: " + "; ".join(lines)


def construct_even_index(two_p: int, k: int = 1) -> KernelDescriptor:
    """A normal subgroup of index 2p.

    p = 1 gives H_{N_k} (every a_i to the generator of Z2). For p >= 2 the
    map onto the dihedral group of order 2p sends a_1 to b and every other
    generator to ab; b and ab generate because their product is a rotation.
    """
    if two_p < 2 or two_p % 2:
        raise ValueError(f"index must be a positive even number, got {two_p}")
    p = two_p // 2
    if two_p > sg.PERM_CLOSURE_BOUND:
        raise UnsupportedOrderError(f"index {two_p} exceeds the size bound {sg.PERM_CLOSURE_BOUND}")
    if p == 1:
        Z2 = sg.catalog_group("Z2")
        return canonical_descriptor(GeneratorAssignment(Z2, (1,) * (k + 1)))
    D = sg.make_dihedral(p)
    b, ab = D.label_to_id("b"), D.label_to_id("ab")
    return canonical_descriptor(GeneratorAssignment(D, (b,) + (ab,) * k))
