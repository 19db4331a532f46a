"""Combinatorial structure of the generalized Sierpinski gaskets SG_{d,b}(n).

Two representations are provided:

* ``SubdivisionSchema`` says how stage n+1 is glued together from copies of
  stage n: which corner slots of which copies are identified, and which
  resulting vertices are the outer corners. The derivation engine only
  needs this.
* ``ExplicitGraph`` is the fully expanded vertex/edge graph, used by the
  brute-force and Tutte oracles at small n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb

import gmpy2

from .errors import NoClosedForm, SizeLimit, UnsupportedFamily

DEFAULT_VERTEX_CAP = 10**7


def check_family(d: int, b: int) -> None:
    if d < 2 or b < 2:
        raise UnsupportedFamily(f"SG_{{{d},{b}}}: need d >= 2 and b >= 2")
    if d >= 3 and b >= 3:
        raise UnsupportedFamily(
            f"SG_{{{d},{b}}}: identification pattern for d >= 3, b >= 3 is not defined"
        )


@dataclass(frozen=True)
class GasketSpec:
    d: int
    b: int
    n: int

    def __post_init__(self):
        check_family(self.d, self.b)
        if self.n < 0:
            raise ValueError(f"stage must be non-negative, got {self.n}")

    @property
    def name(self) -> str:
        if self.b == 2:
            return f"SG_{self.d}({self.n})"
        return f"SG_{{{self.d},{self.b}}}({self.n})"


@dataclass(frozen=True)
class SubdivisionSchema:
    d: int
    b: int
    sub_count: int
    slots: tuple  # ((sub_index, corner_slot), ...), sub-major order
    identifications: tuple  # classes of slots; class index == composed vertex id
    global_corners: tuple  # global corner k -> class index

    @property
    def corner_count(self) -> int:
        return self.d + 1

    @property
    def vertex_count(self) -> int:
        return len(self.identifications)

    def slot_vertex(self) -> tuple:
        """``table[sub][corner]`` -> composed vertex id."""
        table = [[-1] * (self.d + 1) for _ in range(self.sub_count)]
        for cls_index, cls in enumerate(self.identifications):
            for sub, corner in cls:
                table[sub][corner] = cls_index
        return tuple(tuple(row) for row in table)


def _schema_from_points(d, b, subs_points, corner_points):
    """Group slots by the point they sit on; classes ordered by smallest slot."""
    by_point: dict = {}
    for sub, points in enumerate(subs_points):
        for corner, p in enumerate(points):
            by_point.setdefault(p, []).append((sub, corner))
    classes = sorted(tuple(sorted(v)) for v in by_point.values())
    index_of_point = {}
    for p, v in by_point.items():
        index_of_point[p] = classes.index(tuple(sorted(v)))
    slots = tuple((s, c) for s in range(len(subs_points)) for c in range(d + 1))
    return SubdivisionSchema(
        d=d,
        b=b,
        sub_count=len(subs_points),
        slots=slots,
        identifications=tuple(classes),
        global_corners=tuple(index_of_point[p] for p in corner_points),
    )


def build_schema(d: int, b: int) -> SubdivisionSchema:
    check_family(d, b)
    if b == 2:
        # sub k sits at corner k; its corner j is the midpoint of edge {k, j}
        subs = [
            [("c", k) if j == k else ("m", min(k, j), max(k, j)) for j in range(d + 1)]
            for k in range(d + 1)
        ]
        corners = [("c", k) for k in range(d + 1)]
        return _schema_from_points(d, b, subs, corners)
    # d == 2: upward triangles (i, j), i + j <= b - 1, of the side-b triangular grid,
    # ordered by row j then column i; slots are (i, j), (i+1, j), (i, j+1)
    subs = [
        [(i, j), (i + 1, j), (i, j + 1)]
        for j in range(b)
        for i in range(b - j)
    ]
    corners = [(0, 0), (b, 0), (0, b)]
    return _schema_from_points(d, b, subs, corners)


@dataclass(frozen=True)
class ExplicitGraph:
    vertex_count: int
    edges: tuple  # sorted ((u, v), ...) with u < v
    corners: tuple
    d: int = 0
    b: int = 0
    n: int = 0

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree_profile(self) -> dict:
        profile: dict = {}
        for k in self.degrees():
            profile[k] = profile.get(k, 0) + 1
        return dict(sorted(profile.items()))

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": self.d,
                "b": self.b,
                "n": self.n,
                "vertices": self.vertex_count,
                "corners": list(self.corners),
                "edges": [list(e) for e in self.edges],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ExplicitGraph":
        obj = json.loads(text)
        return cls(
            vertex_count=obj["vertices"],
            edges=tuple(sorted(tuple(sorted(e)) for e in obj["edges"])),
            corners=tuple(obj["corners"]),
            d=obj["d"],
            b=obj["b"],
            n=obj["n"],
        )


def _compose(schema: SubdivisionSchema, g: ExplicitGraph) -> tuple:
    """Glue ``sub_count`` copies of ``g``; shared corners get ids 0..C-1."""
    table = schema.slot_vertex()
    corner_pos = {v: k for k, v in enumerate(g.corners)}
    next_id = schema.vertex_count
    edges = set()
    for sub in range(schema.sub_count):
        local = {}
        for v in range(g.vertex_count):
            if v in corner_pos:
                local[v] = table[sub][corner_pos[v]]
            else:
                local[v] = next_id
                next_id += 1
        for u, v in g.edges:
            a, c = local[u], local[v]
            edges.add((a, c) if a < c else (c, a))
    return next_id, tuple(sorted(edges)), tuple(schema.global_corners)


def _vertex_count_recursive(schema: SubdivisionSchema, n: int) -> int:
    v = schema.d + 1
    for _ in range(n):
        v = schema.vertex_count + schema.sub_count * (v - schema.d - 1)
    return v


def build_graph(spec: GasketSpec, vertex_cap: int = DEFAULT_VERTEX_CAP) -> ExplicitGraph:
    d, b = spec.d, spec.b
    schema = build_schema(d, b)
    needed = _vertex_count_recursive(schema, spec.n)
    if needed > vertex_cap:
        raise SizeLimit(f"{spec.name} has {needed} vertices, cap is {vertex_cap}")
    k = d + 1
    g = ExplicitGraph(
        vertex_count=k,
        edges=tuple((u, v) for u in range(k) for v in range(u + 1, k)),
        corners=tuple(range(k)),
        d=d,
        b=b,
        n=0,
    )
    for stage in range(1, spec.n + 1):
        vc, edges, corners = _compose(schema, g)
        g = ExplicitGraph(vc, edges, corners, d, b, stage)
    return g


def size_formulas(spec: GasketSpec) -> tuple:
    """Closed-form ``(edge_count, vertex_count)``."""
    d, b, n = spec.d, spec.b, spec.n
    if b == 2:
        return d * (d + 1) ** (n + 1) // 2, (d + 1) * ((d + 1) ** n + 1) // 2
    if b == 3:
        return 3 * 6**n, (7 * 6**n + 8) // 5
    if b == 4:
        return 3 * 10**n, (4 * 10**n + 5) // 3
    raise NoClosedForm(f"no closed form for {spec.name}; use build_graph")


def vertex_count(d: int, b: int, n: int) -> int:
    """Vertex count at stage n, by closed form when available."""
    try:
        return size_formulas(GasketSpec(d, b, n))[1]
    except NoClosedForm:
        return _vertex_count_recursive(build_schema(d, b), n)


def hausdorff_dimension(d: int, b: int, precision: int = 50):
    if d < 2 or b < 2:
        raise ValueError("need d >= 2 and b >= 2")
    ctx = gmpy2.context(precision=int(precision * 3.33) + 16)
    with ctx:
        return gmpy2.log(comb(b + d - 1, d)) / gmpy2.log(b)
