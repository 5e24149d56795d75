"""Homomorphisms from G_k onto finite groups, given by generator images.

A homomorphism is fixed by where it sends a_1, ..., a_{k+1}; each image must
square to the identity. Its kernel is a normal subgroup whose index is the
order of the image. Kernels of two epimorphisms onto the same group coincide
exactly when the epimorphisms differ by an automorphism of the target, so a
kernel is named canonically by the least image vector in that orbit.
"""

from __future__ import annotations

import functools
import json
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import smallgroup as sg
from .errors import (
    ContractibleFamilyError,
    InvalidFamilyError,
    NotEpimorphismError,
    RankMismatchError,
)
from .freeword import FreeProduct, Word, enumerate_words, word_matrix
from .parity import check_family, gf2_rank
from .smallgroup import GroupTable


@dataclass(frozen=True)
class GeneratorAssignment:
    """images[i] is the image of a_{i+1} in ``target``."""

    target: GroupTable
    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        for i, x in enumerate(self.images):
            if not 0 <= x < self.target.order:
                raise ValueError(f"image of a_{i + 1} is not an element id")
            if self.target.table[x][x] != 0:
                raise ValueError(
                    f"image {self.target.labels[x]} of a_{i + 1} is not an involution"
                )

    @property
    def k(self) -> int:
        return len(self.images) - 1

    def image_labels(self) -> list[str]:
        return [self.target.labels[x] for x in self.images]


@dataclass(frozen=True)
class PartitionSpec:
    """Ordered partition of N_k: a zero class (may be empty) plus classes 1..n."""

    zero_class: int
    classes: tuple[int, ...]

    def validate(self, k: int) -> None:
        full = (1 << (k + 1)) - 1
        seen = self.zero_class
        if self.zero_class & ~full:
            raise InvalidFamilyError("zero class exceeds N_k")
        for c in self.classes:
            if c <= 0:
                raise InvalidFamilyError("partition classes must be nonempty")
            if c & seen or c & ~full:
                raise InvalidFamilyError("partition classes must be disjoint subsets of N_k")
            seen |= c
        if seen != full:
            raise InvalidFamilyError("classes and zero class must cover N_k")

    def class_of(self, i: int) -> int:
        """0 for the zero class, else the 1-based class number holding index i."""
        for j, c in enumerate(self.classes, start=1):
            if c >> (i - 1) & 1:
                return j
        return 0


@dataclass(frozen=True, order=True)
class KernelDescriptor:
    index: int
    iso_label: str
    images: tuple[int, ...] = field(compare=True)

    @property
    def k(self) -> int:
        return len(self.images) - 1

    @property
    def quotient(self) -> GroupTable:
        return sg.catalog_group(self.iso_label)

    def assignment(self) -> GeneratorAssignment:
        return GeneratorAssignment(self.quotient, self.images)

    def image_labels(self) -> list[str]:
        q = self.quotient
        return [q.labels[x] for x in self.images]

    def to_json(self) -> dict:
        return {"quotient": self.iso_label, "index": self.index, "images": self.image_labels()}

    @classmethod
    def from_json(cls, data: dict | str) -> KernelDescriptor:
        if isinstance(data, str):
            data = json.loads(data)
        q = sg.catalog_group(data["quotient"])
        images = tuple(q.label_to_id(lbl) for lbl in data["images"])
        return cls(int(data["index"]), data["quotient"], images)

    def __str__(self) -> str:
        return f"{self.iso_label}[{', '.join(self.image_labels())}]"


def _check_rank(phi: GeneratorAssignment, x: Word) -> None:
    if x.k != phi.k:
        raise RankMismatchError(f"word of rank {x.k} given to a rank-{phi.k} homomorphism")


def evaluate(phi: GeneratorAssignment, x: Word) -> int:
    _check_rank(phi, x)
    T, img = phi.target.table, phi.images
    g = 0
    for i in x.letters:
        g = T[g][img[i - 1]]
    return g


def evaluate_many(phi: GeneratorAssignment, words: Sequence[Word] | np.ndarray) -> np.ndarray:
    """Vectorized :func:`evaluate` over many words (or a padded word matrix)."""
    mat = words if isinstance(words, np.ndarray) else word_matrix(words)
    ext = np.array((0,) + phi.images, dtype=np.int64)  # letter 0 is padding
    T = phi.target.array
    cur = np.zeros(mat.shape[0], dtype=np.int64)
    for j in range(mat.shape[1]):
        cur = T[cur, ext[mat[:, j]]]
    return cur


def is_epimorphism(phi: GeneratorAssignment) -> bool:
    return len(sg.subgroup_closure(phi.target, phi.images)) == phi.target.order


def kernel_member(phi: GeneratorAssignment, x: Word) -> bool:
    return evaluate(phi, x) == 0


def partition_assignment(
    spec: PartitionSpec, target: GroupTable, designated: Sequence[int], k: int
) -> GeneratorAssignment:
    """Send class j to designated[j-1] and the zero class to the identity."""
    spec.validate(k)
    if len(designated) != len(spec.classes):
        raise ValueError("need one designated generator per class")
    for d in designated:
        if d == 0 or target.table[d][d] != 0:
            raise ValueError(f"designated image {target.labels[d]} is not an involution")
    ext = (0,) + tuple(designated)
    return GeneratorAssignment(target, tuple(ext[spec.class_of(i)] for i in range(1, k + 2)))


def hperiod_membership(
    spec: PartitionSpec, target: GroupTable, designated: Sequence[int], x: Word
) -> bool:
    """Membership in the partition subgroup attached to (spec, target).

    The image of x, written as a reduced word over the designated generators,
    always has length below |target|, so the length is divisible by |target|
    only when the image is the identity.
    """
    if len(sg.subgroup_closure(target, designated)) != target.order:
        raise NotEpimorphismError("designated generators do not generate the target")
    return kernel_member(partition_assignment(spec, target, designated, x.k), x)


def express_over(target: GroupTable, gens: Sequence[int], names: Sequence[str], g: int) -> str:
    """Shortest word in ``gens`` evaluating to g, e.g. ``b2*b1*b2``; 'e' for identity."""
    words = {0: ""}
    queue = deque([0])
    while queue and g not in words:
        h = queue.popleft()
        for s, nm in zip(gens, names):
            n = target.table[h][s]
            if n not in words:
                words[n] = f"{words[h]}*{nm}" if words[h] else nm
                queue.append(n)
    if g not in words:
        raise ValueError("element is not in the subgroup generated by gens")
    return words[g] or "e"


# --- the three explicit families -------------------------------------------------

def _k8() -> GroupTable:
    return sg.catalog_group("K8")


def triple_hom(A1: int, A2: int, A3: int, k: int) -> GeneratorAssignment:
    """Epimorphism onto K8 = <a, b, c> whose kernel is H_A1 ∩ H_A2 ∩ H_A3.

    a_i goes to the product of a (if i in A1), b (if i in A2), c (if i in A3).
    """
    check_family((A1, A2, A3), k)
    if gf2_rank((A1, A2, A3)) < 3:
        raise ContractibleFamilyError("triple is contractible; its kernel has index below 8")
    # K8 ids are bit vectors with a=1, b=2, c=4
    images = tuple(
        (A1 >> i & 1) | (A2 >> i & 1) << 1 | (A3 >> i & 1) << 2 for i in range(k + 1)
    )
    return GeneratorAssignment(_k8(), images)


def partition_hom_D4(spec: PartitionSpec, k: int) -> GeneratorAssignment:
    """C1 -> b, C2 -> ab, C0 -> e in D4."""
    if len(spec.classes) != 2:
        raise ValueError("the D4 construction takes exactly two classes")
    D4 = sg.catalog_group("D4")
    return partition_assignment(spec, D4, (D4.label_to_id("b"), D4.label_to_id("ab")), k)


def partition_hom_R10(spec: PartitionSpec, k: int) -> GeneratorAssignment:
    """B1 -> a, B2 -> b, B0 -> e in R10."""
    if len(spec.classes) != 2:
        raise ValueError("the R10 construction takes exactly two classes")
    R = sg.make_r10()
    return partition_assignment(spec, R, (R.label_to_id("a"), R.label_to_id("b")), k)


# --- canonical kernel names -----------------------------------------------------

def canonical_images(rep: GroupTable, images: Sequence[int]) -> tuple[int, ...]:
    """Least image vector in the orbit of ``images`` under Aut(rep)."""
    return min(tuple(a[x] for x in images) for a in sg.automorphisms(rep))


def canonical_descriptor(phi: GeneratorAssignment) -> KernelDescriptor:
    if not is_epimorphism(phi):
        raise NotEpimorphismError("canonical descriptors exist only for epimorphisms")
    rep, witness = sg.identify(phi.target)
    moved = tuple(witness[x] for x in phi.images)
    return KernelDescriptor(rep.order, rep.iso_label, canonical_images(rep, moved))


def descriptor_from_images(iso_label: str, images: Sequence[int]) -> KernelDescriptor:
    """Canonical descriptor for images already expressed in the catalog representative."""
    rep = sg.catalog_group(iso_label)
    return canonical_descriptor(GeneratorAssignment(rep, tuple(images)))


# --- verification ---------------------------------------------------------------

@dataclass
class VerificationReport:
    descriptor: KernelDescriptor
    checks: dict[str, bool]
    counterexample: str | None = None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor.to_json(),
            "passed": self.passed,
            "checks": self.checks,
            "counterexample": self.counterexample,
            "detail": self.detail,
        }


@functools.lru_cache(maxsize=16)
def _word_bank(k: int, max_len: int) -> tuple[tuple[Word, ...], np.ndarray]:
    words = tuple(enumerate_words(k, max_len))
    return words, word_matrix(words, max_len)


def verify_descriptor(
    d: KernelDescriptor,
    k: int | None = None,
    max_len: int = 8,
    samples: int = 1000,
    seed: int = 0,
) -> VerificationReport:
    """Re-check a descriptor from scratch.

    Checks: images are involutions; the images generate a group of the
    claimed index; the kernel is closed under inversion and under every
    product of kernel words whose lengths sum to at most ``max_len`` (all such
    products lie in the enumerated ball); ``samples`` seeded conjugates
    x^-1 h x stay in the kernel; the images are the canonical orbit minimum.
    """
    if k is not None and k != d.k:
        raise RankMismatchError(f"descriptor has rank {d.k}, expected {k}")
    k = d.k
    q = sg.catalog_group(d.iso_label)
    checks: dict[str, bool] = {}
    report = VerificationReport(d, checks)

    checks["involutions"] = all(0 <= x < q.order and q.table[x][x] == 0 for x in d.images)
    if not checks["involutions"]:
        report.detail = "an image is not an involution; a_i^2 = e would be violated"
        report.counterexample = next(
            f"{i + 1} {i + 1}" for i, x in enumerate(d.images)
            if not (0 <= x < q.order and q.table[x][x] == 0)
        )
        return report

    closure = sg.subgroup_closure(q, d.images)
    checks["index"] = len(closure) == d.index == q.order
    if not checks["index"]:
        report.detail = f"image closure has {len(closure)} elements, claimed index {d.index}"
        return report

    phi = GeneratorAssignment(q, d.images)
    words, mat = _word_bank(k, max_len)
    values = evaluate_many(phi, mat)
    kernel = [w for w, v in zip(words, values) if v == 0]
    kset = {w.letters for w in kernel}

    bad = next((h for h in kernel if h.letters[::-1] not in kset), None)
    checks["inverse_closed"] = bad is None
    if bad is not None:
        report.counterexample = str(bad)

    by_len: dict[int, list[Word]] = {}
    for h in kernel:
        by_len.setdefault(len(h), []).append(h)
    bad_pair = None
    for n1, hs1 in by_len.items():
        for n2, hs2 in by_len.items():
            if n1 + n2 > max_len:
                continue
            for h1 in hs1:
                for h2 in hs2:
                    if (h1 * h2).letters not in kset:
                        bad_pair = (h1, h2)
                        break
                if bad_pair:
                    break
            if bad_pair:
                break
        if bad_pair:
            break
    checks["product_closed"] = bad_pair is None
    if bad_pair is not None:
        report.counterexample = f"{bad_pair[0]} | {bad_pair[1]}"

    rng = random.Random(seed)
    G = FreeProduct(k)
    bad_conj = None
    for _ in range(samples):
        h = rng.choice(kernel)
        x = G.random_word(rng, max_len)
        if not kernel_member(phi, ~x * h * x):
            bad_conj = (x, h)
            break
    checks["normal"] = bad_conj is None
    if bad_conj is not None:
        report.counterexample = f"x={bad_conj[0]} h={bad_conj[1]}"

    checks["canonical"] = canonical_images(q, d.images) == d.images
    if not report.passed and not report.detail:
        report.detail = ", ".join(name for name, ok in checks.items() if not ok) + " failed"
    return report
