"""Mechanical derivation of the stage-to-stage recursion polynomials.

Every assignment of an actual corner partition to each sub-gasket is glued
with the schema; the glued configuration either dies or induces a global
corner partition. The recursion polynomial for a shape collects, for the
canonical representative partition of that shape, how many assignments
produce it with each multiset of sub-gasket shapes.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from math import comb
from pathlib import Path

import numpy as np

from .errors import BudgetExceeded, SymmetryViolation
from .partitions import (
    CornerPartition,
    Dead,
    Shape,
    enumerate_partitions,
    integer_partitions,
    merge,
    shape_multiplicity,
    shape_name,
)
from .topology import SubdivisionSchema, build_schema

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class RecursionSystem:
    d: int
    b: int
    variables: tuple  # Shapes in canonical order
    # output Shape -> {exponent tuple aligned with variables: coefficient}
    polynomials: dict
    dead_count: int = 0
    sub_count: int = field(default=0, compare=False)

    @property
    def names(self) -> list:
        return [shape_name(s) for s in self.variables]

    def degree(self) -> int:
        return self.sub_count or next(
            sum(m) for poly in self.polynomials.values() for m in poly
        )

    def evaluate(self, values: dict) -> dict:
        """Apply one recursion step to ``{Shape: int}`` (ints or mpz)."""
        k = self.degree()
        powers = []
        for s in self.variables:
            x = values[s]
            row = [1, x]
            for _ in range(2, k + 1):
                row.append(row[-1] * x)
            powers.append(row)
        out = {}
        for shape, poly in self.polynomials.items():
            total = 0
            for mono, coeff in poly.items():
                term = coeff
                for i, e in enumerate(mono):
                    if e:
                        term = term * powers[i][e]
                total += term
            out[shape] = total
        return out

    def format_polynomial(self, shape: Shape) -> str:
        terms = []
        for mono, coeff in sorted(self.polynomials[shape].items(), reverse=True):
            factors = "".join(
                name + (f"^{e}" if e > 1 else "")
                for name, e in zip(self.names, mono)
                if e
            )
            terms.append(f"{coeff if coeff != 1 else ''}{factors}")
        return " + ".join(terms)

    def to_json(self) -> str:
        polys = {}
        for shape in self.variables:
            entries = []
            for mono, coeff in sorted(self.polynomials[shape].items(), reverse=True):
                entries.append(
                    {
                        "monomial": {
                            str(v): e for v, e in zip(self.variables, mono) if e
                        },
                        "coeff": str(coeff),
                    }
                )
            polys[str(shape)] = entries
        return json.dumps(
            {
                "d": self.d,
                "b": self.b,
                "variables": [str(s) for s in self.variables],
                "polynomials": polys,
                "dead_count": str(self.dead_count),
                "format": FORMAT_VERSION,
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "RecursionSystem":
        obj = json.loads(text)
        if obj.get("format") != FORMAT_VERSION:
            raise ValueError(f"unsupported system format {obj.get('format')!r}")
        variables = tuple(Shape.parse(s) for s in obj["variables"])
        index = {s: i for i, s in enumerate(variables)}
        polys = {}
        for key, entries in obj["polynomials"].items():
            poly = {}
            for entry in entries:
                mono = [0] * len(variables)
                for v, e in entry["monomial"].items():
                    mono[index[Shape.parse(v)]] = int(e)
                poly[tuple(mono)] = int(entry["coeff"])
            polys[Shape.parse(key)] = poly
        sub_count = next((sum(m) for p in polys.values() for m in p), 0)
        return cls(
            d=obj["d"],
            b=obj["b"],
            variables=variables,
            polynomials=polys,
            dead_count=int(obj["dead_count"]),
            sub_count=sub_count,
        )


@dataclass(frozen=True)
class PartitionTally:
    """Raw derivation output: counts per (global partition, shape monomial)."""

    partitions: tuple  # all CornerPartitions of the d+1 corners
    shapes: tuple
    monomials: tuple  # exponent tuples aligned with ``shapes``
    counts: np.ndarray  # [len(partitions) + 1, len(monomials)]; last row is Dead

    @property
    def dead_count(self) -> int:
        return int(self.counts[-1].sum())

    def row(self, partition: CornerPartition) -> dict:
        i = self.partitions.index(partition)
        return {
            m: int(c) for m, c in zip(self.monomials, self.counts[i]) if c
        }


def assignment_count(schema: SubdivisionSchema) -> int:
    return len(enumerate_partitions(schema.d + 1)) ** schema.sub_count


def _monomials(n_shapes: int, degree: int) -> list:
    out = []
    for combo in itertools.combinations_with_replacement(range(n_shapes), degree):
        mono = [0] * n_shapes
        for i in combo:
            mono[i] += 1
        out.append(tuple(mono))
    return sorted(out, reverse=True)


def tally_assignments(schema: SubdivisionSchema, budget: int = DEFAULT_BUDGET,
                      engine: str = "compiled") -> PartitionTally:
    """Enumerate all partition assignments; ``engine`` is compiled or python."""
    required = assignment_count(schema)
    if required > budget:
        raise BudgetExceeded(required, budget)
    k = schema.d + 1
    S = schema.sub_count
    parts = tuple(enumerate_partitions(k))
    shapes = tuple(integer_partitions(k))
    monos = _monomials(len(shapes), S)
    shape_idx = [shapes.index(p.shape) for p in parts]
    part_idx = {p: i for i, p in enumerate(parts)}
    mono_idx = {m: i for i, m in enumerate(monos)}

    if engine == "python":
        counts = np.zeros((len(parts) + 1, len(monos)), np.int64)
        for combo in itertools.product(range(len(parts)), repeat=S):
            mono = [0] * len(shapes)
            for p in combo:
                mono[shape_idx[p]] += 1
            result = merge(schema, [parts[p] for p in combo])
            row = len(parts) if result is Dead else part_idx[result]
            counts[row, mono_idx[tuple(mono)]] += 1
        return PartitionTally(parts, shapes, tuple(monos), counts)

    from ._kernels import assignment_tally

    table = schema.slot_vertex()
    max_u = k - 1
    union_pairs = np.zeros((S, len(parts), max(max_u, 1), 2), np.int64)
    union_counts = np.zeros((S, len(parts)), np.int64)
    for s in range(S):
        for pi, p in enumerate(parts):
            u = 0
            for block in p.blocks:
                for c in block[1:]:
                    union_pairs[s, pi, u] = (table[s][block[0]], table[s][c])
                    u += 1
            union_counts[s, pi] = u
    base = S + 1
    shape_weight = np.array([base ** shape_idx[p] for p in range(len(parts))], np.int64)
    mono_lookup = np.full(base ** len(shapes), -1, np.int64)
    for i, m in enumerate(monos):
        mono_lookup[sum(e * base**j for j, e in enumerate(m))] = i
    out_lookup = np.full(k**k, -1, np.int64)
    for i, p in enumerate(parts):
        out_lookup[sum(x * k**c for c, x in enumerate(p.rgs))] = i
    log.info("deriving SG_{%d,%d}: %d assignments", schema.d, schema.b, required)
    counts = assignment_tally(
        union_pairs,
        union_counts,
        shape_weight,
        mono_lookup,
        np.array(schema.global_corners, np.int64),
        out_lookup,
        schema.vertex_count,
        len(parts),
        len(monos),
    )
    return PartitionTally(parts, shapes, tuple(monos), counts)


def system_from_tally(schema: SubdivisionSchema, tally: PartitionTally,
                      check_symmetry: bool = True) -> RecursionSystem:
    polys = {}
    for shape in tally.shapes:
        rep = tally.row(shape.representative())
        if check_symmetry:
            for p in tally.partitions:
                if p.shape == shape and tally.row(p) != rep:
                    raise SymmetryViolation(
                        f"partition {p} disagrees with representative of shape {shape}"
                    )
        polys[shape] = rep
    return RecursionSystem(
        d=schema.d,
        b=schema.b,
        variables=tally.shapes,
        polynomials=polys,
        dead_count=tally.dead_count,
        sub_count=schema.sub_count,
    )


def derive_system(schema: SubdivisionSchema, budget: int = DEFAULT_BUDGET,
                  engine: str = "compiled") -> RecursionSystem:
    return system_from_tally(schema, tally_assignments(schema, budget, engine))


def derive_against(schema: SubdivisionSchema, target: CornerPartition,
                   budget: int = DEFAULT_BUDGET) -> dict:
    """Polynomial for an arbitrary target partition (not just the representative)."""
    return tally_assignments(schema, budget).row(target)


def cache_path(cache_dir, d: int, b: int) -> Path:
    return Path(cache_dir) / f"system_d{d}_b{b}_v{FORMAT_VERSION}.json"


def load_or_derive(d: int, b: int, cache_dir=None, budget: int = DEFAULT_BUDGET) -> RecursionSystem:
    if cache_dir is not None:
        path = cache_path(cache_dir, d, b)
        if path.exists():
            try:
                return RecursionSystem.from_json(path.read_text())
            except (ValueError, KeyError):
                log.warning("ignoring unreadable cache file %s", path)
    system = derive_system(build_schema(d, b), budget)
    if cache_dir is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(system.to_json())
        tmp.replace(path)
    return system


def conservation_total(system: RecursionSystem) -> int:
    """Sum over shapes of multiplicity * (polynomial at all ones) + dead count."""
    total = system.dead_count
    for shape, poly in system.polynomials.items():
        total += shape_multiplicity(shape) * sum(poly.values())
    return total


def monomial_count(n_shapes: int, degree: int) -> int:
    return comb(n_shapes + degree - 1, degree)
