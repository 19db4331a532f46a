"""Hard-coded transcriptions of the published recursion systems.

Each fixture is stored as text in the printed notation (``12f^3g`` is
12 f(n)^3 g(n)) and parsed into the same ``{Shape: {monomial: coeff}}``
layout that ``RecursionSystem`` uses, so the two can be diffed term by term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import UnknownFixture
from .partitions import integer_partitions, shape_from_name

FIXTURE_TEXT = {
    "SG2": (2, 2, {
        "f": "f^3 + 6f^2g",
        "g": "f^2g + f^2h + 7fg^2",
        "h": "3fg^2 + 12fgh + 14g^3",
    }),
    "SG23": (2, 3, {
        "f": "f^6 + 15f^5g + 3f^5h + 78f^4g^2 + 18f^4gh + 142f^3g^3",
        "g": "f^5g + f^5h + 16f^4g^2 + 18f^4gh + 89f^3g^3 + 2f^4h^2 + 77f^3g^2h"
             " + 171f^2g^4",
        "h": "3f^4g^2 + 6f^4gh + 51f^3g^3 + 3f^4h^2 + 129f^3g^2h + 279f^2g^4"
             " + 60f^3gh^2 + 564f^2g^3h + 468fg^5",
    }),
    "SG24": (2, 4, {
        "f": "f^10 + 27f^9g + 7f^9h + 309f^8g^2 + 144f^8gh + 1928f^7g^3 + 15f^8h^2"
             " + 1140f^7g^2h + 6936f^6g^4 + 174f^7gh^2 + 4140f^6g^3h + 13626f^5g^5"
             " + 2f^7h^3 + 516f^6g^2h^2 + 5856f^5g^4h + 11354f^4g^6",
        "g": "f^9g + f^9h + 28f^8g^2 + 34f^8gh + 332f^7g^3 + 6f^8h^2 + 462f^7g^2h"
             " + 2148f^6g^4 + 142f^7gh^2 + 3130f^6g^3h + 8015f^5g^5 + 12f^7h^3"
             " + 1095f^6g^2h^2 + 10609f^5g^4h + 16250f^4g^6 + 82f^6gh^3"
             " + 2786f^5g^3h^2 + 14480f^4g^5h + 13732f^3g^7",
        "h": "3f^8g^2 + 6f^8gh + 87f^7g^3 + 3f^8h^2 + 189f^7g^2h + 1068f^6g^4"
             " + 117f^7gh^2 + 2558f^6g^3h + 7113f^5g^5 + 15f^7h^3 + 1869f^6g^2h^2"
             " + 17763f^5g^4h + 26934f^4g^6 + 444f^6gh^3 + 12756f^5g^3h^2"
             " + 61422f^4g^5h + 53826f^3g^7 + 20f^6h^4 + 2388f^5g^2h^3"
             " + 30948f^4g^4h^2 + 83234f^3g^6h + 42210f^2g^8",
    }),
    "SG3": (3, 2, {
        "f": "f^4 + 12f^3g + 12f^3h + 12f^3r + 48f^2g^2 + 96f^2gh + 48f^2h^2"
             " + 72f^2gr + 72f^2hr + 56fg^3 + 168fg^2h + 168fgh^2 + 56fh^3",
        "g": "f^3g + 3f^3r + 9f^2g^2 + 12f^2gh + f^3s + 36f^2gr + 30f^2hr + 28fg^3"
             " + 66fg^2h + 54fgh^2 + 6f^2gs + 6f^2hs + 24f^2r^2 + 108fg^2r"
             " + 192fghr + 84fh^2r + 20g^4 + 72g^3h + 96g^2h^2 + 56gh^3",
        "h": "2f^2h^2 + 4f^2hr + 12fg^2h + 12fgh^2 + 16fh^3 + 2f^2r^2 + 12fg^2r"
             " + 48fghr + 36fh^2r + 2g^4 + 16g^3h + 36g^2h^2 + 32gh^3 + 22h^4",
        "r": "f^2g^2 + 2f^2h^2 + 6f^2gr + 6f^2hr + 6fg^3 + 22fg^2h + 14fgh^2"
             " + 16fh^3 + 2f^2gs + 2f^2hs + 12f^2r^2 + 60fg^2r + 132fghr"
             " + 66fh^2r + 12g^4 + 52g^3h + 78g^2h^2 + 48gh^3 + 22h^4 + 6f^2rs"
             " + 14fg^2s + 28fghs + 14fh^2s + 120fgr^2 + 120fhr^2 + 88g^3r"
             " + 264g^2hr + 264gh^2r + 88h^3r",
        "s": "4fg^3 + 36fg^2r + 24fghr + 12g^4 + 24g^3h + 12fg^2s + 24fghs"
             " + 12fh^2s + 144fgr^2 + 120fhr^2 + 144g^3r + 360g^2hr + 216gh^2r"
             " + 144fgrs + 144fhrs + 56g^3s + 168g^2hs + 168gh^2s + 56h^3s"
             " + 208fr^3 + 720g^2r^2 + 1440ghr^2 + 720h^2r^2",
    }),
}

_TERM = re.compile(r"^(\d*)((?:[a-z]'?(?:\^\d+)?)+)$")
_FACTOR = re.compile(r"([a-z]'?)(?:\^(\d+))?")


def parse_polynomial(text: str, d: int) -> dict:
    shapes = integer_partitions(d + 1)
    index = {s: i for i, s in enumerate(shapes)}
    poly: dict = {}
    for raw in text.split("+"):
        term = raw.replace(" ", "")
        match = _TERM.match(term)
        if not match:
            raise ValueError(f"cannot parse term {raw!r}")
        coeff = int(match.group(1) or 1)
        mono = [0] * len(shapes)
        for name, exp in _FACTOR.findall(match.group(2)):
            mono[index[shape_from_name(name, d)]] += int(exp or 1)
        key = tuple(mono)
        if key in poly:
            raise ValueError(f"monomial {raw!r} listed twice")
        poly[key] = coeff
    return poly


def load_fixture(fixture_id: str) -> tuple:
    """``(d, b, {Shape: polynomial})`` for a published system."""
    try:
        d, b, texts = FIXTURE_TEXT[fixture_id]
    except KeyError:
        raise UnknownFixture(
            f"no fixture {fixture_id!r}; known: {', '.join(FIXTURE_TEXT)}"
        ) from None
    return d, b, {shape_from_name(name, d): parse_polynomial(t, d) for name, t in texts.items()}


def fixture_for_family(d: int, b: int) -> str | None:
    for key, (fd, fb, _) in FIXTURE_TEXT.items():
        if (fd, fb) == (d, b):
            return key
    return None


@dataclass(frozen=True)
class Mismatch:
    shape: object
    monomial: tuple
    kind: str  # "missing", "extra" or "coefficient"
    expected: int
    actual: int

    def describe(self, names) -> str:
        mono = "".join(
            n + (f"^{e}" if e > 1 else "") for n, e in zip(names, self.monomial) if e
        )
        return f"{self.shape}: {mono} {self.kind} (printed {self.expected}, derived {self.actual})"


def verify_fixture(system, fixture_id: str) -> list:
    """Every monomial where ``system`` and the printed equations disagree."""
    d, b, expected = load_fixture(fixture_id)
    if (system.d, system.b) != (d, b):
        raise ValueError(
            f"fixture {fixture_id} is for SG_{{{d},{b}}}, system is "
            f"SG_{{{system.d},{system.b}}}"
        )
    report = []
    for shape in sorted(set(expected) | set(system.polynomials)):
        want = expected.get(shape, {})
        got = system.polynomials.get(shape, {})
        for mono in sorted(set(want) | set(got), reverse=True):
            w, g = want.get(mono, 0), got.get(mono, 0)
            if w == g:
                continue
            kind = "missing" if g == 0 else "extra" if w == 0 else "coefficient"
            report.append(Mismatch(shape, mono, kind, w, g))
    return report


def fixture_system(fixture_id: str):
    """The printed equations as a ``RecursionSystem`` (for iterating them as-is)."""
    from .derivation import RecursionSystem

    d, b, polys = load_fixture(fixture_id)
    shapes = tuple(integer_partitions(d + 1))
    return RecursionSystem(
        d=d, b=b, variables=shapes, polynomials=polys,
        sub_count=next(sum(m) for p in polys.values() for m in p),
    )
