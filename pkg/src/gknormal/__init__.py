"""Normal subgroups of finite index in G_k, the free product of k+1 copies of Z/2."""

from .freeword import FreeProduct, Word, enumerate_words, inverse, multiply, reduce
from .quotients import GeneratorAssignment, KernelDescriptor, PartitionSpec, canonical_descriptor

__all__ = [
    "FreeProduct",
    "Word",
    "enumerate_words",
    "inverse",
    "multiply",
    "reduce",
    "GeneratorAssignment",
    "KernelDescriptor",
    "PartitionSpec",
    "canonical_descriptor",
]
