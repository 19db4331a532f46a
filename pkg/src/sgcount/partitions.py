"""Set partitions of the outer corners, their shapes, and the gluing merge.

Partitions are stored as restricted-growth strings (RGS): ``rgs[i]`` is the
block number of element ``i`` and block numbers appear in first-occurrence
order, so ``(0, 0, 1, 2, 2)`` is ``{0,1}{2}{3,4}``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .errors import ArityMismatch

MAX_K = 6


@dataclass(frozen=True, order=True)
class CornerPartition:
    rgs: tuple

    def __post_init__(self):
        seen = -1
        for x in self.rgs:
            if x > seen + 1:
                raise ValueError(f"not a restricted-growth string: {self.rgs}")
            seen = max(seen, x)

    @classmethod
    def from_blocks(cls, blocks, k: int | None = None) -> "CornerPartition":
        blocks = [sorted(b) for b in blocks if b]
        if k is None:
            k = sum(len(b) for b in blocks)
        label = [-1] * k
        for b in blocks:
            for x in b:
                if label[x] != -1:
                    raise ValueError(f"element {x} appears in two blocks")
                label[x] = b[0]
        if -1 in label:
            raise ValueError("blocks do not cover 0..k-1")
        return cls(canonical_rgs(label))

    @classmethod
    def parse(cls, text: str) -> "CornerPartition":
        return cls(tuple(int(ch) for ch in text))

    @property
    def k(self) -> int:
        return len(self.rgs)

    @property
    def blocks(self) -> tuple:
        out: dict = {}
        for i, x in enumerate(self.rgs):
            out.setdefault(x, []).append(i)
        return tuple(tuple(out[x]) for x in sorted(out))

    @property
    def block_count(self) -> int:
        return max(self.rgs) + 1 if self.rgs else 0

    @property
    def shape(self) -> "Shape":
        return Shape(tuple(sorted(Counter(self.rgs).values(), reverse=True)))

    def permuted(self, perm) -> "CornerPartition":
        """Image under ``i -> perm[i]``."""
        return CornerPartition.from_blocks(
            [[perm[i] for i in b] for b in self.blocks], self.k
        )

    def __str__(self) -> str:
        return "".join(str(x) for x in self.rgs)


class _DeadType:
    """A configuration with a component that touches no outer corner."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Dead"

    def __reduce__(self):
        return (_DeadType, ())


Dead = _DeadType()


@dataclass(frozen=True)
class Shape:
    block_sizes: tuple  # descending

    def __post_init__(self):
        if tuple(sorted(self.block_sizes, reverse=True)) != tuple(self.block_sizes):
            raise ValueError(f"block sizes must be sorted descending: {self.block_sizes}")

    @property
    def k(self) -> int:
        return sum(self.block_sizes)

    @property
    def sort_key(self) -> tuple:
        # (5) < (4,1) < (3,2) < (3,1,1) < ... < (1,1,1,1,1)
        return tuple(-x for x in self.block_sizes)

    def __lt__(self, other: "Shape") -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.block_sizes)

    @classmethod
    def parse(cls, text: str) -> "Shape":
        return cls(tuple(int(x) for x in text.split(",")))

    def representative(self) -> CornerPartition:
        """Canonical partition of this shape: consecutive blocks, largest first."""
        blocks, start = [], 0
        for size in self.block_sizes:
            blocks.append(list(range(start, start + size)))
            start += size
        return CornerPartition.from_blocks(blocks, self.k)


def canonical_rgs(labels) -> tuple:
    relabel: dict = {}
    out = []
    for x in labels:
        if x not in relabel:
            relabel[x] = len(relabel)
        out.append(relabel[x])
    return tuple(out)


@lru_cache(maxsize=None)
def _rgs_list(k: int) -> tuple:
    if k == 0:
        return ((),)
    out = []
    for prefix in _rgs_list(k - 1):
        top = max(prefix) + 1 if prefix else 0
        for x in range(top + 1):
            out.append(prefix + (x,))
    return tuple(sorted(out))


def enumerate_partitions(k: int) -> list:
    """All partitions of {0..k-1} in lexicographic RGS order."""
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in 1..{MAX_K}, got {k}")
    return [CornerPartition(r) for r in _rgs_list(k)]


def integer_partitions(k: int) -> list:
    """Shapes of k in canonical order."""

    def gen(n, largest):
        if n == 0:
            yield ()
            return
        for first in range(min(n, largest), 0, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return sorted(Shape(p) for p in gen(k, k))


def shape_multiplicity(shape: Shape, k: int | None = None) -> int:
    if k is not None and shape.k != k:
        raise ValueError(f"shape {shape} is not a shape of {k}")
    n = factorial(shape.k)
    for size in shape.block_sizes:
        n //= factorial(size)
    for count in Counter(shape.block_sizes).values():
        n //= factorial(count)
    return n


# Conventional single-letter names for the class counts.
SHAPE_NAMES = {
    2: {(3,): "f", (2, 1): "g", (1, 1, 1): "h"},
    3: {(4,): "f", (3, 1): "g", (2, 2): "h", (2, 1, 1): "r", (1, 1, 1, 1): "s"},
    4: {
        (5,): "f",
        (3, 2): "g",
        (4, 1): "g'",
        (2, 2, 1): "h",
        (3, 1, 1): "h'",
        (2, 1, 1, 1): "r",
        (1, 1, 1, 1, 1): "s",
    },
}


def shape_name(shape: Shape) -> str:
    return SHAPE_NAMES.get(shape.k - 1, {}).get(shape.block_sizes, str(shape))


def shape_from_name(name: str, d: int) -> Shape:
    for sizes, nm in SHAPE_NAMES.get(d, {}).items():
        if nm == name:
            return Shape(sizes)
    return Shape.parse(name)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def merge(schema, assignment):
    """Glue per-sub corner partitions into a global corner partition or ``Dead``."""
    if len(assignment) != schema.sub_count:
        raise ArityMismatch(
            f"expected {schema.sub_count} partitions, got {len(assignment)}"
        )
    k = schema.d + 1
    table = schema.slot_vertex()
    uf = UnionFind(schema.vertex_count)
    for sub, part in enumerate(assignment):
        if part.k != k:
            raise ArityMismatch(f"sub {sub}: partition over {part.k} corners, need {k}")
        for block in part.blocks:
            first = table[sub][block[0]]
            for c in block[1:]:
                uf.union(first, table[sub][c])
    corner_roots = {uf.find(v) for v in schema.global_corners}
    if any(uf.find(v) not in corner_roots for v in range(schema.vertex_count)):
        return Dead
    return CornerPartition(canonical_rgs(uf.find(v) for v in schema.global_corners))
