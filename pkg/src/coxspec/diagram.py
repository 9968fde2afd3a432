"""Valued graphs, the named-diagram catalog, bicolorings and orientations."""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class DiagramError(ValueError):
    """Malformed diagram, unknown catalog name, or violated valued-graph condition."""


class NotBipartiteError(DiagramError):
    """The graph contains an odd cycle."""


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    d_uv: int = 1
    d_vu: int = 1

    def reversed(self) -> Edge:
        return Edge(self.v, self.u, self.d_vu, self.d_uv)

    def key(self) -> frozenset:
        return frozenset((self.u, self.v))


@dataclass(frozen=True)
class ValuedGraph:
    """A valued graph: vertices, rigged edges (d_uv, d_vu) and vertex weights f.

    Vertices are kept in a canonical order.  For bipartite graphs the part
    holding the lexicographically smallest vertex comes first; inside each
    part the construction order is preserved.
    """

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    weights: Mapping[str, int]
    name: str = ""
    cyclic: bool = False
    extension_vertex: str | None = None
    kind: str = "other"
    meta: Mapping[str, object] = field(default_factory=dict)

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        return self.vertices.index(v)

    def neighbors(self, v: str) -> list[str]:
        out = []
        for e in self.edges:
            if e.u == v:
                out.append(e.v)
            elif e.v == v:
                out.append(e.u)
        return out

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def rigging(self, u: str, v: str) -> tuple[int, int]:
        """(d_uv, d_vu) for the edge joining u and v."""
        for e in self.edges:
            if e.u == u and e.v == v:
                return e.d_uv, e.d_vu
            if e.u == v and e.v == u:
                return e.d_vu, e.d_uv
        raise DiagramError(f"no edge {u}–{v}")

    def has_edge(self, u: str, v: str) -> bool:
        return any(e.key() == frozenset((u, v)) for e in self.edges)

    def is_simply_laced(self) -> bool:
        return all(e.d_uv == 1 and e.d_vu == 1 for e in self.edges)

    def is_tree(self) -> bool:
        return not self.cyclic and len(self.edges) == self.n - 1 and self.is_connected()

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            v = todo.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == self.n

    def require_tree(self) -> None:
        if not self.is_tree():
            raise DiagramError(f"{self.name or 'graph'} is not a tree")

    def with_meta(self, **kw) -> ValuedGraph:
        return make_graph(
            self.vertices,
            [(e.u, e.v, e.d_uv, e.d_vu) for e in self.edges],
            name=kw.pop("name", self.name),
            cyclic=kw.pop("cyclic", self.cyclic),
            extension_vertex=kw.pop("extension_vertex", self.extension_vertex),
            kind=kw.pop("kind", self.kind),
            meta={**self.meta, **kw.pop("meta", {})},
            weights=kw.pop("weights", None),
        )

    def __str__(self) -> str:
        return self.name or f"graph on {self.n} vertices"


@dataclass(frozen=True)
class BipartitePartition:
    part1: tuple[str, ...]
    part2: tuple[str, ...]

    def side(self, v: str) -> int:
        if v in self.part1:
            return 1
        if v in self.part2:
            return 2
        raise DiagramError(f"{v} is in neither part")


@dataclass(frozen=True)
class Orientation:
    """Direction of every edge: a map from the unordered edge to (source, target)."""

    direction: Mapping[frozenset, tuple[str, str]]
    name: str = ""

    def __hash__(self) -> int:
        return hash(frozenset(self.direction.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, Orientation) and dict(self.direction) == dict(other.direction)

    def source_target(self, u: str, v: str) -> tuple[str, str]:
        return self.direction[frozenset((u, v))]

    def is_sink(self, v: str, g: ValuedGraph) -> bool:
        return all(self.direction[frozenset((v, w))][1] == v for w in g.neighbors(v))

    def is_source(self, v: str, g: ValuedGraph) -> bool:
        return all(self.direction[frozenset((v, w))][0] == v for w in g.neighbors(v))

    def reflect_at(self, v: str) -> Orientation:
        """Reverse every arrow incident to v."""
        out = {}
        for k, (s, t) in self.direction.items():
            out[k] = (t, s) if v in k else (s, t)
        return Orientation(out, self.name)

    def reversed(self) -> Orientation:
        return Orientation({k: (t, s) for k, (s, t) in self.direction.items()}, f"reversed {self.name}".strip())

    def flipped(self, edges: Iterable[tuple[str, str]]) -> Orientation:
        out = dict(self.direction)
        for u, v in edges:
            k = frozenset((u, v))
            if k not in out:
                raise DiagramError(f"no edge {u}–{v} to flip")
            s, t = out[k]
            out[k] = (t, s)
        return Orientation(out, self.name)

    def differing_edges(self, other: Orientation) -> list[frozenset]:
        return [k for k in self.direction if self.direction[k] != other.direction[k]]


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------


def _solve_weights(vertices: Sequence[str], edges: Sequence[Edge]) -> dict[str, int]:
    """Smallest positive integers f with d_uv·f_v = d_vu·f_u along every edge."""
    adj: dict[str, list[tuple[str, int, int]]] = {v: [] for v in vertices}
    for e in edges:
        adj[e.u].append((e.v, e.d_uv, e.d_vu))
        adj[e.v].append((e.u, e.d_vu, e.d_uv))
    f: dict[str, Fraction] = {}
    for start in vertices:
        if start in f:
            continue
        f[start] = Fraction(1)
        todo = [start]
        while todo:
            u = todo.pop()
            for v, duv, dvu in adj[u]:
                want = f[u] * dvu / duv
                if v in f:
                    if f[v] != want:
                        raise DiagramError(f"edge {u}–{v}: no weights satisfy d_uv·f_v = d_vu·f_u around a cycle")
                    continue
                f[v] = want
                todo.append(v)
    den = 1
    for x in f.values():
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = {v: int(x * den) for v, x in f.items()}
    g = 0
    for x in ints.values():
        g = math.gcd(g, x)
    return {v: x // g for v, x in ints.items()}


def _two_coloring(vertices: Sequence[str], edges: Sequence[Edge]) -> dict[str, int] | None:
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for e in edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    color: dict[str, int] = {}
    for s in sorted(vertices):
        if s in color:
            continue
        color[s] = 1
        todo = deque([s])
        while todo:
            u = todo.popleft()
            for w in adj[u]:
                if w not in color:
                    color[w] = 3 - color[u]
                    todo.append(w)
                elif color[w] == color[u]:
                    return None
    return color


def make_graph(
    vertices: Sequence[str],
    edges: Iterable[tuple[str, str, int, int] | tuple[str, str]],
    *,
    name: str = "",
    cyclic: bool = False,
    extension_vertex: str | None = None,
    kind: str = "other",
    meta: Mapping[str, object] | None = None,
    weights: Mapping[str, int] | None = None,
) -> ValuedGraph:
    """Validate and canonically order a valued graph."""
    vs = list(vertices)
    if len(set(vs)) != len(vs):
        raise DiagramError("duplicate vertex names")
    es: list[Edge] = []
    seen: set[frozenset] = set()
    for item in edges:
        if len(item) == 2:
            u, v = item
            duv = dvu = 1
        else:
            u, v, duv, dvu = item
        if u not in vs or v not in vs:
            raise DiagramError(f"edge {u}–{v} uses an undeclared vertex")
        if u == v:
            raise DiagramError(f"loop at {u}")
        if duv < 1 or dvu < 1:
            raise DiagramError(f"edge {u}–{v}: rigging must be positive")
        k = frozenset((u, v))
        if k in seen:
            raise DiagramError(f"edge {u}–{v} listed twice")
        seen.add(k)
        es.append(Edge(u, v, int(duv), int(dvu)))
    if weights is None:
        f = _solve_weights(vs, es)
    else:
        f = {v: int(weights.get(v, 0)) for v in vs}
        if any(x <= 0 for x in f.values()):
            raise DiagramError("every vertex needs a positive weight")
        for e in es:
            if e.d_uv * f[e.v] != e.d_vu * f[e.u]:
                raise DiagramError(
                    f"edge {e.u}–{e.v}: d_uv·f_v = {e.d_uv}·{f[e.v]} differs from d_vu·f_u = {e.d_vu}·{f[e.u]}"
                )
    color = _two_coloring(vs, es)
    if color is not None:
        vs = [v for v in vs if color[v] == 1] + [v for v in vs if color[v] == 2]
    if not cyclic and len(es) >= len(vs) and len(vs) > 0:
        cyclic = True
    return ValuedGraph(tuple(vs), tuple(es), f, name, cyclic, extension_vertex, kind, dict(meta or {}))


def bicolor(g: ValuedGraph) -> BipartitePartition:
    """Deterministic 2-coloring; the part holding the smallest vertex name is S1."""
    color = _two_coloring(g.vertices, g.edges)
    if color is None:
        raise NotBipartiteError(f"{g.name or 'graph'} has an odd cycle")
    return BipartitePartition(
        tuple(v for v in g.vertices if color[v] == 1),
        tuple(v for v in g.vertices if color[v] == 2),
    )


def dual_graph(g: ValuedGraph) -> ValuedGraph:
    """Transpose every rigging; weights are recomputed."""
    dual_name = str(g.meta.get("dual", "")) or (f"dual of {g.name}" if g.name else "")
    if g.is_simply_laced():
        dual_name = g.name
    meta = dict(g.meta)
    if "dual" in meta:
        meta["dual"] = g.name
    return make_graph(
        g.vertices,
        [(e.u, e.v, e.d_vu, e.d_uv) for e in g.edges],
        name=dual_name,
        cyclic=g.cyclic,
        extension_vertex=g.extension_vertex,
        kind=g.kind,
        meta=meta,
    )


def add_edge(g: ValuedGraph, u: str, v: str, d_uv: int = 1, d_vu: int = 1, new_vertex: bool = True) -> ValuedGraph:
    vs = list(g.vertices)
    for w in (u, v):
        if w not in vs:
            if not new_vertex:
                raise DiagramError(f"unknown vertex {w}")
            vs.append(w)
    edges = [(e.u, e.v, e.d_uv, e.d_vu) for e in g.edges] + [(u, v, d_uv, d_vu)]
    return make_graph(vs, edges, name=f"{g.name}+{u}{v}" if g.name else "")


def remove_vertex(g: ValuedGraph, v: str) -> ValuedGraph:
    vs = [w for w in g.vertices if w != v]
    edges = [(e.u, e.v, e.d_uv, e.d_vu) for e in g.edges if v not in (e.u, e.v)]
    return make_graph(vs, edges, name=f"{g.name}∖{v}" if g.name else "")


def induced_subgraph(g: ValuedGraph, keep: Iterable[str]) -> ValuedGraph:
    ks = set(keep)
    vs = [w for w in g.vertices if w in ks]
    edges = [(e.u, e.v, e.d_uv, e.d_vu) for e in g.edges if e.u in ks and e.v in ks]
    return make_graph(vs, edges)


def components_without_edge(g: ValuedGraph, u: str, v: str) -> tuple[ValuedGraph, ValuedGraph]:
    """Split a tree along the edge u–v; the first component contains u."""
    if not g.has_edge(u, v):
        raise DiagramError(f"no edge {u}–{v}")
    seen = {u}
    todo = [u]
    while todo:
        a = todo.pop()
        for b in g.neighbors(a):
            if {a, b} == {u, v} or b in seen:
                continue
            seen.add(b)
            todo.append(b)
    if v in seen:
        raise DiagramError(f"edge {u}–{v} does not split the graph")
    rest = [w for w in g.vertices if w not in seen]
    return induced_subgraph(g, seen), induced_subgraph(g, rest)


def glue_copies(gamma: ValuedGraph, attach: str, n: int, apex: str = "apex") -> ValuedGraph:
    """Star with n rays whose endpoints are the attachment vertices of n copies of gamma."""
    vs = [apex]
    edges = []
    for i in range(1, n + 1):
        ren = {w: f"{w}_{i}" for w in gamma.vertices}
        vs.extend(ren[w] for w in gamma.vertices)
        edges.extend((ren[e.u], ren[e.v], e.d_uv, e.d_vu) for e in gamma.edges)
        edges.append((apex, ren[attach], 1, 1))
    return make_graph(vs, edges, name=f"{gamma.name}({n})")


# ---------------------------------------------------------------------------
# Orientations
# ---------------------------------------------------------------------------


def bicolored_orientation(g: ValuedGraph) -> Orientation:
    """Every arrow runs from S1 to S2, so S2 consists of sinks."""
    part = bicolor(g)
    s1 = set(part.part1)
    out = {}
    for e in g.edges:
        out[e.key()] = (e.u, e.v) if e.u in s1 else (e.v, e.u)
    return Orientation(out, "bicolored")


def central_orientation(g: ValuedGraph, center: str | None = None) -> Orientation:
    """All arrows point towards a vertex of maximal degree."""
    g.require_tree()
    if center is None:
        best = max(g.degree(v) for v in g.vertices)
        center = next(v for v in g.vertices if g.degree(v) == best)
    dist = {center: 0}
    todo = deque([center])
    while todo:
        a = todo.popleft()
        for b in g.neighbors(a):
            if b not in dist:
                dist[b] = dist[a] + 1
                todo.append(b)
    out = {}
    for e in g.edges:
        out[e.key()] = (e.u, e.v) if dist[e.u] > dist[e.v] else (e.v, e.u)
    return Orientation(out, "central")


def orientation_from_arrows(g: ValuedGraph, arrows: Iterable[tuple[str, str]], name: str = "") -> Orientation:
    out = {}
    for s, t in arrows:
        if not g.has_edge(s, t):
            raise DiagramError(f"no edge {s}–{t}")
        out[frozenset((s, t))] = (s, t)
    missing = [e for e in g.edges if e.key() not in out]
    if missing:
        raise DiagramError(f"edge {missing[0].u}–{missing[0].v} has no direction")
    return Orientation(out, name)


def parse_orientation(g: ValuedGraph, spec: str | None) -> Orientation:
    """``bicolored``, ``central``, ``reversed``, ``reversed-bicolored``, or ``flip:u-v,u-v``
    (edges flipped relative to the bicolored orientation), or ``arrows:u>v,…``."""
    if spec is None or spec in ("", "bicolored", "bicolor"):
        return bicolored_orientation(g)
    if spec in ("reversed", "reversed-bicolored"):
        return bicolored_orientation(g).reversed()
    if spec == "central":
        return central_orientation(g)
    if spec == "reversed-central":
        return central_orientation(g).reversed()
    if spec.startswith("flip:"):
        pairs = []
        for item in spec[5:].split(","):
            item = item.strip()
            if not item:
                continue
            a, _, b = item.partition("-")
            pairs.append((a.strip(), b.strip()))
        o = bicolored_orientation(g).flipped(pairs)
        return Orientation(o.direction, spec)
    if spec.startswith("arrows:"):
        arrows = []
        for item in spec[7:].split(","):
            a, _, b = item.partition(">")
            arrows.append((a.strip(), b.strip()))
        return orientation_from_arrows(g, arrows, spec)
    raise DiagramError(f"unknown orientation '{spec}'")


# ---------------------------------------------------------------------------
# Graph DSL
# ---------------------------------------------------------------------------


def parse_graph(text: str, name: str = "") -> ValuedGraph:
    """Parse ``vertex``/``edge``/``weight`` lines; ``#`` starts a comment."""
    vertices: list[str] = []
    edges: list[tuple[str, str, int, int]] = []
    weights: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kw = parts[0]
        try:
            if kw == "vertex" and len(parts) == 2:
                vertices.append(parts[1])
            elif kw == "edge" and len(parts) in (3, 5):
                u, v = parts[1], parts[2]
                duv, dvu = (int(parts[3]), int(parts[4])) if len(parts) == 5 else (1, 1)
                for w in (u, v):
                    if w not in vertices:
                        vertices.append(w)
                edges.append((u, v, duv, dvu))
            elif kw == "weight" and len(parts) == 3:
                weights[parts[1]] = int(parts[2])
            else:
                raise DiagramError(f"line {lineno}: cannot parse '{raw.strip()}'")
        except ValueError as exc:
            if isinstance(exc, DiagramError):
                raise
            raise DiagramError(f"line {lineno}: expected integers in '{raw.strip()}'") from exc
    for w in weights:
        if w not in vertices:
            raise DiagramError(f"weight for undeclared vertex {w}")
    g = make_graph(vertices, edges, name=name, weights=None)
    if weights:
        full = dict(g.weights)
        full.update(weights)
        g = make_graph(vertices, edges, name=name, weights=full)
    return g


def format_graph(g: ValuedGraph) -> str:
    lines = [f"vertex {v}" for v in g.vertices]
    lines += [f"edge {e.u} {e.v} {e.d_uv} {e.d_vu}" for e in g.edges]
    lines += [f"weight {v} {g.weights[v]}" for v in g.vertices]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------


def _name_by_bfs(order: Sequence[int], adjacency: Mapping[int, Sequence[int]], root: int) -> dict[int, str]:
    """x/y names by parity of the distance from ``root``; x0 only for a branch root."""
    root_name = "x0" if len(adjacency[root]) >= 3 else "x1"
    names = {root: root_name}
    counters = {"x": 0 if root_name == "x0" else 1, "y": 0}
    dist = {root: 0}
    todo = deque([root])
    while todo:
        a = todo.popleft()
        for b in adjacency[a]:
            if b in dist:
                continue
            dist[b] = dist[a] + 1
            letter = "x" if dist[b] % 2 == 0 else "y"
            counters[letter] += 1
            names[b] = f"{letter}{counters[letter]}"
            todo.append(b)
    return names


def _named_tree(
    n: int,
    edges: Sequence[tuple[int, int, int, int]],
    root: int,
    *,
    name: str,
    kind: str,
    extension: int | None = None,
    meta: Mapping[str, object] | None = None,
) -> ValuedGraph:
    adjacency: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b, _, _ in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    names = _name_by_bfs(range(n), adjacency, root)
    order = sorted(range(n), key=lambda i: _bfs_rank(i, adjacency, root))
    return make_graph(
        [names[i] for i in order],
        [(names[a], names[b], da, db) for a, b, da, db in edges],
        name=name,
        kind=kind,
        extension_vertex=names[extension] if extension is not None else None,
        meta=meta,
    )


def _bfs_rank(i: int, adjacency: Mapping[int, Sequence[int]], root: int) -> int:
    order = [root]
    seen = {root}
    k = 0
    while k < len(order):
        for b in adjacency[order[k]]:
            if b not in seen:
                seen.add(b)
                order.append(b)
        k += 1
    return order.index(i)


def _chain_edges(riggings: Sequence[tuple[int, int]]) -> list[tuple[int, int, int, int]]:
    return [(i, i + 1, a, b) for i, (a, b) in enumerate(riggings)]


def _tpqr_edges(p: int, q: int, r: int) -> tuple[int, list[tuple[int, int, int, int]]]:
    """Vertex 0 is the branch point; branches listed longest first."""
    lengths = sorted((p - 1, q - 1, r - 1), reverse=True)
    edges = []
    nxt = 1
    for length in lengths:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt, 1, 1))
            prev = nxt
            nxt += 1
    return nxt, edges


def _remove_index(n: int, edges, drop: int):
    keep = [i for i in range(n) if i != drop]
    ren = {old: new for new, old in enumerate(keep)}
    return len(keep), [(ren[a], ren[b], da, db) for a, b, da, db in edges if drop not in (a, b)]


# Kac labels (nil-root coordinates along the construction order) are stored so
# tests can compare them with the computed kernel of K.


def _extended_chain(riggings: Sequence[tuple[int, int]], *, name: str, root: int, extension: int, meta) -> ValuedGraph:
    edges = _chain_edges(riggings)
    return _named_tree(len(riggings) + 1, edges, root, name=name, kind="extended", extension=extension, meta=meta)


def _series_chain(n: int, last: tuple[int, int], first: tuple[int, int] = (1, 1)) -> list[tuple[int, int]]:
    """Rigging list for a chain on n+1 vertices with special first and last edges."""
    if n == 1:
        raise DiagramError("chain too short")
    rig = [(1, 1)] * n
    rig[0] = first
    rig[-1] = last if n > 1 else last
    return rig


_CANON_RE = re.compile(r"^(?P<fam>[A-Z]{1,2}|\*)(?P<idx>\d+)?(?P<tilde>~)?(?:k=(?P<k>\d+))?$")


def _normalize_name(name: str) -> str:
    s = name.strip().replace(" ", "")
    s = s.replace("̃", "~")
    for a, b in (("Ã", "A~"), ("Ẽ", "E~"), ("D̃", "D~")):
        s = s.replace(a, b)
    # move a tilde that precedes the index to the end: "E~6" -> "E6~"
    m = re.match(r"^([A-Z]{1,2})~(\d+)(.*)$", s)
    if m:
        s = f"{m.group(1)}{m.group(2)}~{m.group(3)}"
    s = s.replace("_", "")
    return s


def catalog_names() -> list[str]:
    return [
        "A[n]", "B[n]", "C[n]", "D[n]", "E6", "E7", "E8", "F4", "G2",
        "A11~", "A12~", "A[n]~k=j", "B[n]~", "C[n]~", "BC[n]~", "D[n]~", "CD[n]~", "DD[n]~",
        "E6~", "E7~", "E8~", "F41~", "F42~", "G21~", "G22~", "G12~", "T[p,q,r]", "*[n]",
    ]


def build_catalog(name: str) -> ValuedGraph:
    """Construct a named diagram, e.g. ``E8``, ``E6~``, ``F41~``, ``T[2,3,7]``, ``*[5]``, ``A[5]~k=2``."""
    raw = name
    s = _normalize_name(name)
    m = re.match(r"^T\[(\d+),(\d+),(\d+)\]$", s)
    if m:
        return _build_tpqr(*(int(x) for x in m.groups()))
    m = re.match(r"^\*\[(\d+)\]$", s)
    if m:
        return _build_star(int(m.group(1)))
    m = re.match(r"^([A-Z]{1,2})\[(\d+)\](~)?(?:k=(\d+))?$", s)
    if m:
        s = f"{m.group(1)}{m.group(2)}{m.group(3) or ''}" + (f"k={m.group(4)}" if m.group(4) else "")
    m = _CANON_RE.match(s)
    if not m:
        raise DiagramError(f"unknown diagram '{raw}'")
    fam, idx, tilde, k = m.group("fam"), m.group("idx"), bool(m.group("tilde")), m.group("k")
    n = int(idx) if idx else None
    if tilde:
        return _build_extended(fam, idx, k, raw)
    if n is None:
        raise DiagramError(f"diagram '{raw}' needs an index")
    return _build_dynkin(fam, n, raw)


def _build_dynkin(fam: str, n: int, raw: str) -> ValuedGraph:
    if fam == "A":
        if n < 1:
            raise DiagramError("A_n needs n ≥ 1")
        return _named_tree(n, _chain_edges([(1, 1)] * (n - 1)), 0, name=f"A{n}", kind="dynkin",
                           meta={"family": "A", "rank": n, "affine": None})
    if fam in ("B", "C"):
        if n < 2:
            raise DiagramError(f"{fam}_n needs n ≥ 2")
        # Short root at the end for B (its row carries the −2), long root at the end for C.
        last = (1, 2) if fam == "B" else (2, 1)
        g = _named_tree(n, _chain_edges([(1, 1)] * (n - 2) + [last]), 0, name=f"{fam}{n}", kind="dynkin",
                        meta={"family": fam, "rank": n, "dual": f"{'C' if fam == 'B' else 'B'}{n}",
                              "affine": f"CD{n}~" if fam == "B" else f"C{n}~"})
        return g
    if fam == "D":
        if n < 4:
            raise DiagramError("D_n needs n ≥ 4")
        ext = build_catalog(f"D{n}~")
        return _dynkin_from_extended(ext, f"D{n}", "D", n)
    if fam == "E":
        if n not in (6, 7, 8):
            raise DiagramError("E_n exists for n = 6, 7, 8 only")
        ext = build_catalog(f"E{n}~")
        return _dynkin_from_extended(ext, f"E{n}", "E", n)
    if fam == "F":
        if n != 4:
            raise DiagramError("only F4 exists")
        return _named_tree(4, _chain_edges([(1, 1), (1, 2), (1, 1)]), 0, name="F4", kind="dynkin",
                           meta={"family": "F", "rank": 4, "dual": "F4", "affine": "F42~"})
    if fam == "G":
        if n != 2:
            raise DiagramError("only G2 exists")
        return _named_tree(2, [(0, 1, 3, 1)], 0, name="G2", kind="dynkin",
                           meta={"family": "G", "rank": 2, "dual": "G2", "affine": "G22~"})
    raise DiagramError(f"unknown diagram '{raw}'")


def _dynkin_from_extended(ext: ValuedGraph, name: str, fam: str, n: int) -> ValuedGraph:
    v = ext.extension_vertex
    vs = [w for w in ext.vertices if w != v]
    edges = [(e.u, e.v, e.d_uv, e.d_vu) for e in ext.edges if v not in (e.u, e.v)]
    return make_graph(vs, edges, name=name, kind="dynkin", meta={"family": fam, "rank": n, "affine": ext.name})


def _build_extended(fam: str, idx: str | None, k: str | None, raw: str) -> ValuedGraph:
    n = int(idx) if idx else None
    key = f"{fam}{idx or ''}"
    if key == "A11":
        return _extended_chain([(4, 1)], name="A11~", root=0, extension=1,
                               meta={"kac": "A2^(2)", "labels": (2, 1), "twist": (2, "A2")})
    if key == "A12":
        return _extended_chain([(2, 2)], name="A12~", root=0, extension=1,
                               meta={"kac": "A1^(1)", "labels": (1, 1)})
    if fam == "A":
        if n is None or n < 1:
            raise DiagramError("Ã_n needs n ≥ 1")
        cls = int(k) if k else 1
        if not 1 <= cls <= n:
            raise DiagramError(f"class index k must lie in 1..{n}")
        names = [f"a{i}" for i in range(n + 1)]
        if n == 1:
            return make_graph(names, [("a0", "a1", 2, 2)], name="A1~", kind="extended", extension_vertex="a0",
                              meta={"kac": "A1^(1)", "labels": (1, 1), "class_index": cls})
        edges = [(names[i], names[(i + 1) % (n + 1)], 1, 1) for i in range(n + 1)]
        return make_graph(names, edges, name=f"A{n}~", cyclic=True, kind="extended", extension_vertex="a0",
                          meta={"kac": f"A{n}^(1)", "labels": (1,) * (n + 1), "class_index": cls})
    if n is None and fam not in ("E", "F", "G"):
        raise DiagramError(f"diagram '{raw}' needs an index")
    if fam == "E":
        pqr = {"6": (3, 3, 3), "7": (4, 4, 2), "8": (2, 3, 6)}.get(idx or "")
        if pqr is None:
            raise DiagramError(f"unknown diagram '{raw}'")
        count, edges = _tpqr_edges(*pqr)
        ext = count - 1  # tip of the last-built (shortest) branch for E6, otherwise the longest one
        if idx == "6":
            ext = count - 1
        elif idx == "7":
            ext = count - 2  # tip of the second long branch
        else:
            ext = _branch_tip(edges, count, 0)
        labels = {"6": 12, "7": 18, "8": 30}
        return _named_tree(count, edges, 0, name=f"E{idx}~", kind="extended", extension=ext,
                           meta={"kac": f"E{idx}^(1)", "h": labels[idx]})
    if fam == "D":
        if n < 4:
            raise DiagramError("D̃_n needs n ≥ 4")
        if n == 4:
            edges = [(0, i, 1, 1) for i in range(1, 5)]
            return _named_tree(5, edges, 0, name="D4~", kind="extended", extension=1,
                               meta={"kac": "D4^(1)", "labels": (2, 1, 1, 1, 1)})
        inner = n - 3
        edges = []
        # internal chain 0..inner-1, leaves after
        leaves = [inner, inner + 1, inner + 2, inner + 3]
        edges.append((0, leaves[0], 1, 1))
        edges.append((0, leaves[1], 1, 1))
        for i in range(inner - 1):
            edges.append((i, i + 1, 1, 1))
        edges.append((inner - 1, leaves[2], 1, 1))
        edges.append((inner - 1, leaves[3], 1, 1))
        return _named_tree(n + 1, edges, 0, name=f"D{n}~", kind="extended", extension=leaves[0],
                           meta={"kac": f"D{n}^(1)"})
    if fam == "B":
        # D_{n+1}^(2): labels all 1.
        _need(n, 2, raw)
        rig = [(2, 1)] + [(1, 1)] * (n - 2) + [(1, 2)]
        return _extended_chain(rig, name=f"B{n}~", root=0, extension=0,
                               meta={"kac": f"D{n + 1}^(2)", "labels": (1,) * (n + 1), "dual": f"C{n}~",
                                     "twist": (2, f"D{n + 1}" if n >= 3 else "A3")})
    if fam == "C":
        # C_n^(1): labels (1,2,…,2,1).
        _need(n, 2, raw)
        rig = [(1, 2)] + [(1, 1)] * (n - 2) + [(2, 1)]
        return _extended_chain(rig, name=f"C{n}~", root=0, extension=0,
                               meta={"kac": f"C{n}^(1)", "labels": (1,) + (2,) * (n - 1) + (1,), "dual": f"B{n}~"})
    if fam == "BC":
        # A_{2n}^(2): labels (2,…,2,1); self-dual up to relabelling.
        _need(n, 1, raw)
        if n == 1:
            return _build_extended("A", "11", None, raw)
        rig = [(2, 1)] + [(1, 1)] * (n - 2) + [(2, 1)]
        return _extended_chain(rig, name=f"BC{n}~", root=0, extension=n,
                               meta={"kac": f"A{2 * n}^(2)", "labels": (2,) * n + (1,), "twist": (2, f"A{2 * n}")})
    if fam in ("CD", "DD"):
        # CD: B_n^(1), labels (1,1,2,…,2,2); DD: A_{2n-1}^(2), labels (1,1,2,…,2,1).
        _need(n, 3, raw)
        last = (1, 2) if fam == "CD" else (2, 1)
        edges = [(0, 2, 1, 1), (1, 2, 1, 1)]
        for i in range(2, n):
            d = last if i == n - 1 else (1, 1)
            edges.append((i, i + 1, d[0], d[1]))
        labels = (1, 1) + (2,) * (n - 2) + ((2,) if fam == "CD" else (1,))
        kac = f"B{n}^(1)" if fam == "CD" else f"A{2 * n - 1}^(2)"
        return _named_tree(n + 1, edges, 2, name=f"{fam}{n}~", kind="extended", extension=0,
                           meta={"kac": kac, "labels": labels, "dual": f"{'DD' if fam == 'CD' else 'CD'}{n}~",
                                 "twist": None if fam == "CD" else (2, f"A{2 * n - 1}")})
    if fam == "F":
        if idx == "42":
            rig = [(1, 1), (1, 1), (1, 2), (1, 1)]
            return _extended_chain(rig, name="F42~", root=0, extension=0,
                                   meta={"kac": "F4^(1)", "labels": (1, 2, 3, 4, 2), "dual": "F41~"})
        if idx == "41":
            rig = [(1, 1), (1, 1), (2, 1), (1, 1)]
            return _extended_chain(rig, name="F41~", root=0, extension=0,
                                   meta={"kac": "E6^(2)", "labels": (1, 2, 3, 2, 1), "dual": "F42~", "twist": (2, "E6")})
    if fam == "G":
        if idx in ("22", "12"):
            g = _extended_chain([(1, 1), (1, 3)], name="G22~", root=1, extension=0,
                                meta={"kac": "G2^(1)", "labels": (1, 2, 3), "dual": "G21~"})
            return g if idx == "22" else g.with_meta(name="G12~")
        if idx == "21":
            return _extended_chain([(1, 1), (3, 1)], name="G21~", root=1, extension=0,
                                   meta={"kac": "D4^(3)", "labels": (1, 2, 1), "dual": "G22~", "twist": (3, "D4")})
    raise DiagramError(f"unknown diagram '{raw}'")


def _need(n: int | None, lo: int, raw: str) -> None:
    if n is None or n < lo:
        raise DiagramError(f"diagram '{raw}' needs index ≥ {lo}")


def _branch_tip(edges, count: int, root: int) -> int:
    """Tip of the longest branch (the first branch built)."""
    adjacency: dict[int, list[int]] = {i: [] for i in range(count)}
    for a, b, _, _ in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    first = adjacency[root][0]
    prev, cur = root, first
    while True:
        nxt = [w for w in adjacency[cur] if w != prev]
        if not nxt:
            return cur
        prev, cur = cur, nxt[0]


def _build_tpqr(p: int, q: int, r: int) -> ValuedGraph:
    if min(p, q, r) < 1:
        raise DiagramError("branch lengths must be positive")
    if min(p, q, r) == 1:
        raise DiagramError(
            f"T[{p},{q},{r}] has a branch of length 1 and is the path A_{p + q + r - 2}; use that name instead"
        )
    count, edges = _tpqr_edges(p, q, r)
    return _named_tree(count, edges, 0, name=f"T[{p},{q},{r}]", kind="tree", meta={"pqr": (p, q, r)})


def _build_star(n: int) -> ValuedGraph:
    if n < 1:
        raise DiagramError("a star needs at least one ray")
    edges = [(0, i, 1, 1) for i in range(1, n + 1)]
    return _named_tree(n + 1, edges, 0, name=f"*[{n}]", kind="tree", meta={"rays": n})


# ---------------------------------------------------------------------------
# T_{p,q,r} classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TpqrClass:
    kind: str
    mu: Fraction
    hyperbolic: bool
    note: str = ""


def classify_tpqr(p: int, q: int, r: int) -> TpqrClass:
    """μ = 1/p + 1/q + 1/r decides positive (μ > 1), affine (μ = 1) or indefinite."""
    if min(p, q, r) < 1:
        raise DiagramError("branch lengths must be positive")
    mu = Fraction(1, p) + Fraction(1, q) + Fraction(1, r)
    if min(p, q, r) == 1:
        return TpqrClass("positive", mu, False, f"path A_{p + q + r - 2}")
    if mu > 1:
        return TpqrClass("positive", mu, False)
    if mu == 1:
        return TpqrClass("affine", mu, False)
    hyper = tuple(sorted((p, q, r))) in {(2, 3, 7), (2, 4, 5), (3, 3, 4)}
    return TpqrClass("hyperbolic-indefinite" if hyper else "indefinite", mu, hyper)
