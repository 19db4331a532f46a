"""Numerical estimate of z for the b = 2 gaskets from a few exact stages.

Since the vertex count of SG_d(m) is (d+1)[(d+1)^m + 1]/2, ln f(m) grows
like z (d+1)^{m+1}/2. The model

    ln f(m) = a (d+1)^m + b m + c

absorbs the linear drift, and is solved exactly on the last three stages.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import gmpy2
from gmpy2 import mpfr

from .errors import DegenerateSystem


@dataclass(frozen=True)
class FitReport:
    d: int
    stages: tuple  # the three stages used for the solve
    a: object
    b: object
    c: object
    z: object
    residuals: dict = field(default_factory=dict)  # stage -> ln f - model
    precision: int = 50

    def to_json(self) -> str:
        def s(x):
            return format(x, f".{self.precision}g")

        return json.dumps({
            "d": self.d,
            "stages": list(self.stages),
            "a": s(self.a), "b": s(self.b), "c": s(self.c),
            "z": s(self.z),
            "residuals": {str(k): f"{float(v):.6e}" for k, v in self.residuals.items()},
        })


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def extrapolate_z(d: int, vectors, precision: int = 50) -> FitReport:
    """Fit on the last three stages of ``vectors`` (at least four stages)."""
    stages = sorted(vectors, key=lambda v: v.stage)
    if len(stages) < 4:
        raise ValueError("extrapolation needs at least 4 computed stages")
    if stages[0].d != d:
        raise ValueError(f"vectors are for d = {stages[0].d}, not {d}")
    base = d + 1
    with gmpy2.context(precision=int(precision * 3.33) + 32):
        rows = [[mpfr(base) ** v.stage, mpfr(v.stage), mpfr(1)] for v in stages[-3:]]
        rhs = [gmpy2.log(mpfr(v.f)) for v in stages[-3:]]
        det = _det3(rows)
        if det == 0:
            raise DegenerateSystem("fit matrix is singular")
        coeffs = []
        for col in range(3):
            swapped = [r[:col] + [y] + r[col + 1:] for r, y in zip(rows, rhs)]
            coeffs.append(_det3(swapped) / det)
        a, b, c = coeffs
        residuals = {
            v.stage: gmpy2.log(mpfr(v.f)) - (a * mpfr(base) ** v.stage + b * v.stage + c)
            for v in stages[:-3] if v.f > 0
        }
        z = 2 * a / base
    return FitReport(d, tuple(v.stage for v in stages[-3:]), a, b, c, z, residuals, precision)
