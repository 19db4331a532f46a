"""Exact iteration of recursion systems and the ratio sequences built on them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context, Decimal

import gmpy2
from gmpy2 import mpq, mpz

from .errors import OracleMismatch, RangeError, StageCap
from .partitions import Shape, integer_partitions, shape_from_name, shape_name

# Stage-0 class counts as stated for the ordinary gaskets (SG_{2,b} share d = 2).
STATED_INITIALS = {
    2: {"f": 4, "g": 1, "h": 1},
    3: {"f": 38, "g": 4, "h": 1, "r": 1, "s": 1},
    4: {"f": 728, "g": 4, "g'": 38, "h": 1, "h'": 4, "r": 1, "s": 1},
}


@dataclass(frozen=True)
class ClassVector:
    stage: int
    counts: dict  # Shape -> non-negative integer

    @property
    def d(self) -> int:
        return next(iter(self.counts)).k - 1

    @property
    def shapes(self) -> list:
        return sorted(self.counts)

    @property
    def f(self):
        return self.counts[Shape((self.d + 1,))]

    def __getitem__(self, name):
        if isinstance(name, Shape):
            return self.counts[name]
        return self.counts[shape_from_name(name, self.d)]

    def named(self) -> dict:
        return {shape_name(s): self.counts[s] for s in self.shapes}

    def as_json(self) -> dict:
        return {
            "stage": self.stage,
            "counts": {str(s): str(self.counts[s]) for s in self.shapes},
            "names": {str(s): shape_name(s) for s in self.shapes},
        }

    def to_json(self) -> str:
        return json.dumps(self.as_json())


def initial_vector(d: int) -> ClassVector:
    """Stage-0 counts computed on K_{d+1} and checked against the stated initials."""
    if not 2 <= d <= 4:
        raise ValueError(f"initial vectors are defined for 2 <= d <= 4, got {d}")
    from .oracle import classify_by_subsets
    from .topology import GasketSpec, build_graph

    computed = classify_by_subsets(build_graph(GasketSpec(d, 2, 0)))
    expected = {shape_from_name(k, d): v for k, v in STATED_INITIALS[d].items()}
    if dict(computed.counts) != expected:
        raise OracleMismatch(
            f"stage-0 counts for d={d}: computed {computed.named()}, "
            f"expected {STATED_INITIALS[d]}"
        )
    return ClassVector(0, {s: mpz(v) for s, v in computed.counts.items()})


def iterate(system, start: ClassVector, steps: int, stage_cap: int | None = None) -> list:
    """``[start, stage+1, ..., stage+steps]`` by exact big-integer evaluation."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if stage_cap is not None and start.stage + steps > stage_cap:
        raise StageCap(
            f"stage {start.stage + steps} exceeds cap {stage_cap} for "
            f"SG_{{{system.d},{system.b}}}"
        )
    out = [ClassVector(start.stage, {s: mpz(v) for s, v in start.counts.items()})]
    for _ in range(steps):
        nxt = system.evaluate(out[-1].counts)
        out.append(ClassVector(out[-1].stage + 1, nxt))
    return out


def _shapes_d2():
    return integer_partitions(3)  # f, g, h


@dataclass(frozen=True)
class RatioSequence:
    stages: tuple
    alpha: tuple  # exact mpq per stage, f/g
    beta: tuple  # exact mpq per stage, g/h

    def __len__(self) -> int:
        return len(self.stages)

    def at(self, m: int) -> tuple:
        i = self.stages.index(m)
        return self.alpha[i], self.beta[i]

    def rendered(self, digits: int = 15) -> list:
        return [
            (m, render(a, digits), render(b, digits))
            for m, a, b in zip(self.stages, self.alpha, self.beta)
        ]


def ratios(vectors) -> RatioSequence:
    if any(v.d != 2 for v in vectors):
        raise ValueError("ratio sequences are defined for the d = 2 family only")
    f_shape, g_shape, h_shape = _shapes_d2()
    stages, alpha, beta = [], [], []
    for v in vectors:
        f, g, h = v.counts[f_shape], v.counts[g_shape], v.counts[h_shape]
        if g == 0 or h == 0:
            raise ZeroDivisionError(f"stage {v.stage}: zero g or h count")
        stages.append(v.stage)
        alpha.append(mpq(f, g))
        beta.append(mpq(g, h))
    return RatioSequence(tuple(stages), tuple(alpha), tuple(beta))


def render(q, digits: int = 15) -> str:
    """Round-to-nearest decimal string with ``digits`` significant digits."""
    q = mpq(q)
    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN)
    value = ctx.divide(Decimal(int(q.numerator)), Decimal(int(q.denominator)))
    text = format(value, "f")
    return text


def product_formula_f(m: int, n: int, vectors) -> mpq:
    """f_2(n) rebuilt from stage-m counts and the ratio sequence (exact)."""
    if not 0 <= m < n:
        raise RangeError(f"need 0 <= m < n, got m={m}, n={n}")
    by_stage = {v.stage: v for v in vectors}
    seq = ratios([by_stage[i] for i in range(m, n)])
    f_shape, g_shape, _ = _shapes_d2()
    fm, gm = by_stage[m].counts[f_shape], by_stage[m].counts[g_shape]
    span = n - m
    result = mpq(fm) ** ((3**span + 1) // 2) * mpq(gm) ** ((3**span - 1) // 2)
    for i in range(1, span + 1):
        a, _ = seq.at(n - i)
        result *= (6 + a) ** ((3 ** (i - 1) + 1) // 2)
    for j in range(2, span + 1):
        a, b = seq.at(n - j)
        result *= (7 + a + a / b) ** ((3 ** (j - 1) - 1) // 2)
    return result


def z_sequence(vectors, d: int, b: int, precision: int = 50) -> list:
    """``[(m, ln f(m) / v(m))]`` at ``precision`` significant digits."""
    from .topology import vertex_count

    bits = int(precision * 3.33) + 16
    out = []
    with gmpy2.context(precision=bits):
        for v in vectors:
            out.append((v.stage, gmpy2.log(mpz(v.f)) / vertex_count(d, b, v.stage)))
    return out
