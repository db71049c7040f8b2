"""Abstract ``G_k``-labelled graphs.

A graph of type ``(k, n)`` is an ``n``-regular multigraph whose edge set is
split into *cells*: connected, even, ``v``-regular subgraphs all of whose
edges carry the same character.  The label multiset of a vertex is the
multiset of labels on its incident edges, and the coloring polynomial is the
mod-2 sum of these multisets.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import product as cartesian
from typing import Sequence

from .gf2core import (
    FormalPoly,
    GlMatrix,
    RankError,
    char_from_indices,
    char_name,
    check_char,
    check_rank,
    formal_sigma,
    span_rank,
)
from .realizability import forced_partition, is_realizable
from .repalgebra import GkRep, RepPolynomial, canonical_coset
from .textio import ParseError, parse_char


class GraphStructureError(ValueError):
    """The input is not a well-formed labelled multigraph."""


@dataclass(frozen=True)
class Cell:
    label: int
    valence: int
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        norm = []
        for u, w in self.edges:
            if u == w:
                raise GraphStructureError(f"loop at {u} in cell {char_name(self.label)}")
            norm.append((u, w) if u <= w else (w, u))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(sorted({x for e in self.edges for x in e}))

    def degree(self) -> Counter:
        return Counter(x for e in self.edges for x in e)

    def is_connected(self) -> bool:
        verts = self.vertices
        if not verts:
            return False
        adj = defaultdict(set)
        for u, w in self.edges:
            adj[u].add(w)
            adj[w].add(u)
        seen = {verts[0]}
        stack = [verts[0]]
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == len(verts)


@dataclass(frozen=True)
class LabelledGraph:
    k: int
    n: int
    vertices: tuple[str, ...]
    cells: tuple[Cell, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "cells", tuple(self.cells))

    def vertex_labels(self) -> dict[str, tuple[int, ...]]:
        labels: dict[str, list[int]] = {v: [] for v in self.vertices}
        for c in self.cells:
            for u, w in c.edges:
                labels[u].append(c.label)
                labels[w].append(c.label)
        return {v: tuple(sorted(ls)) for v, ls in labels.items()}


@dataclass(frozen=True)
class Violation:
    rule: str
    location: str
    detail: str

    def describe(self) -> str:
        return f"{self.rule} at {self.location}: {self.detail}"


def check_structure(g: LabelledGraph) -> None:
    """Raise GraphStructureError unless ``g`` is a well-formed labelled multigraph."""
    check_rank(g.k)
    if len(set(g.vertices)) != len(g.vertices):
        raise GraphStructureError("duplicate vertex identifiers")
    known = set(g.vertices)
    degree: Counter = Counter()
    for c in g.cells:
        check_char(c.label, g.k)
        name = f"cell {char_name(c.label)} on {','.join(c.vertices)}"
        if c.valence < 1:
            raise GraphStructureError(f"{name}: valence must be positive")
        for x in c.vertices:
            if x not in known:
                raise GraphStructureError(f"{name}: unknown vertex {x}")
        if any(d != c.valence for d in c.degree().values()):
            raise GraphStructureError(f"{name}: not {c.valence}-regular")
        if not c.is_connected():
            raise GraphStructureError(f"{name}: disconnected")
        if len(c.vertices) % 2:
            raise GraphStructureError(f"{name}: odd number of vertices")
        degree.update(c.degree())
    for v in g.vertices:
        if degree[v] != g.n:
            raise GraphStructureError(f"vertex {v} has degree {degree[v]}, expected {g.n}")


def _key(labels: Sequence[int], rho: int) -> tuple[int, ...]:
    return tuple(sorted(canonical_coset(x, rho) for x in labels))


def validate(g: LabelledGraph) -> Violation | None:
    """First violation of the three labelling rules, or None; raises on malformed input."""
    check_structure(g)
    labels = g.vertex_labels()
    for v in g.vertices:
        if span_rank(labels[v]) != g.k:
            return Violation("P1", f"vertex {v}", "labels do not span the character group")
    for c in g.cells:
        verts = c.vertices
        ref = _key(labels[verts[0]], c.label)
        for x in verts[1:]:
            if _key(labels[x], c.label) != ref:
                return Violation(
                    "P2",
                    f"cell {char_name(c.label)}",
                    f"vertices {verts[0]} and {x} differ modulo {char_name(c.label)}",
                )
    groups: dict[tuple[int, int], list[Cell]] = defaultdict(list)
    for c in g.cells:
        if c.valence > 1:
            groups[(c.label, c.valence)].append(c)
    for (rho, val), cells in sorted(groups.items()):
        for i in range(len(cells)):
            for j in range(i + 1, len(cells)):
                a, b = cells[i], cells[j]
                where = f"cells {char_name(rho)} valence {val}"
                if set(a.vertices) & set(b.vertices):
                    return Violation("P3", where, "share a vertex")
                if _key(labels[a.vertices[0]], rho) == _key(labels[b.vertices[0]], rho):
                    return Violation("P3", where, "congruent modulo the label")
    return None


@dataclass(frozen=True)
class PropertyFailure:
    cell: Cell
    multiset: tuple[int, ...]

    def describe(self) -> str:
        s = "*".join(char_name(c) for c in self.multiset) or "1"
        return f"cell {char_name(self.cell.label)} valence {self.cell.valence}: odd count for {s}"


def property_P(g: LabelledGraph) -> PropertyFailure | None:
    labels = g.vertex_labels()
    for c in g.cells:
        for r in range(1, c.valence):
            total = FormalPoly(g.k, frozenset())
            for x in c.vertices:
                total = total + formal_sigma(r, labels[x], g.k)
            if total:
                return PropertyFailure(c, total.min_monomial())
    return None


def coloring_polynomial(g: LabelledGraph) -> RepPolynomial:
    labels = g.vertex_labels()
    return RepPolynomial.from_reps(g.k, (GkRep(g.k, labels[v]) for v in g.vertices), g.n)


lambda_ = coloring_polynomial


def is_geometric(g: LabelledGraph) -> bool:
    return validate(g) is None and property_P(g) is None


def _regular_cell(rho: int, m: int, verts: Sequence[str]) -> list[Cell]:
    s = len(verts)
    if s == 2:
        return [Cell(rho, m, ((verts[0], verts[1]),) * m)]
    edges = [(verts[i], verts[(i + 1) % s]) for i in range(s)]
    matching = [(verts[i], verts[i + 1]) for i in range(0, s, 2)]
    edges += matching * (m - 2)
    return [Cell(rho, m, tuple(edges))]


def build_from_data(p: RepPolynomial) -> LabelledGraph:
    """A geometric graph whose coloring polynomial is ``p``.

    Vertices ``v0, v1, ...`` follow the canonical monomial order.  Valence-1
    groups are cut into adjacent pairs; a valence-``m`` group becomes ``m``
    parallel edges on two vertices, or a Hamiltonian cycle plus ``m - 2``
    copies of the matching of cycle-adjacent pairs.
    """
    verdict = is_realizable(p)
    if not verdict:
        raise ValueError(f"not realizable: {verdict.witness.describe()}")
    monos = p.monomials()
    name = {r: f"v{i}" for i, r in enumerate(monos)}
    cells: list[Cell] = []
    for rho in p.occurring_chars():
        for cls in forced_partition(p, rho):
            verts = [name[r] for r in cls.members]
            if cls.m == 1:
                for i in range(0, len(verts), 2):
                    cells.append(Cell(rho, 1, ((verts[i], verts[i + 1]),)))
            else:
                cells.extend(_regular_cell(rho, cls.m, verts))
    return LabelledGraph(p.k, p.n, tuple(name[r] for r in monos), tuple(cells))


def product(g1: LabelledGraph, g2: LabelledGraph) -> LabelledGraph:
    """Cartesian product; vertex ``(a, b)`` is named ``a.b``."""
    if g1.k != g2.k:
        raise RankError(f"rank mismatch: {g1.k} vs {g2.k}")
    check_structure(g1)
    check_structure(g2)
    vid = {(a, b): f"{a}.{b}" for a, b in cartesian(g1.vertices, g2.vertices)}
    cells: list[Cell] = []
    for c in g1.cells:
        for b in g2.vertices:
            cells.append(Cell(c.label, c.valence, tuple((vid[u, b], vid[w, b]) for u, w in c.edges)))
    for c in g2.cells:
        for a in g1.vertices:
            cells.append(Cell(c.label, c.valence, tuple((vid[a, u], vid[a, w]) for u, w in c.edges)))
    return LabelledGraph(g1.k, g1.n + g2.n, tuple(vid.values()), tuple(cells))


def rpk_graph(k: int) -> LabelledGraph:
    """One-skeleton of the k-simplex with the standard linear labels."""
    check_rank(k)
    verts = tuple(f"v{i}" for i in range(k + 1))
    cells = []
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            label = char_from_indices([j]) if i == 0 else char_from_indices([i, j])
            cells.append(Cell(label, 1, ((verts[i], verts[j]),)))
    return LabelledGraph(k, k, verts, tuple(cells))


@dataclass(frozen=True)
class CharacteristicData:
    """Characteristic function of a small cover over a product of simplices.

    ``columns`` lists the facet vectors factor by factor: ``dims[0] + 1``
    columns for the first simplex, then the next, and so on.
    """

    dims: tuple[int, ...]
    columns: tuple[int, ...]
    k: int

    def __post_init__(self):
        if any(d < 1 for d in self.dims):
            raise ValueError("simplex dimensions must be positive")
        if len(self.columns) != sum(d + 1 for d in self.dims):
            raise ValueError("column count must be the sum of (dim + 1)")
        if sum(self.dims) != self.k:
            raise ValueError("polytope dimension must equal the rank")
        for v in self.polytope_vertices():
            if span_rank(self.incident_columns(v)) != self.k:
                raise ValueError(f"singular characteristic data at vertex {v}")

    @classmethod
    def from_rows(cls, dims: Sequence[int], rows: Sequence[Sequence[int]]) -> CharacteristicData:
        k = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = tuple(sum((rows[i][j] & 1) << i for i in range(k)) for j in range(ncols))
        return cls(tuple(dims), cols, k)

    def facet_blocks(self) -> list[range]:
        out, start = [], 0
        for d in self.dims:
            out.append(range(start, start + d + 1))
            start += d + 1
        return out

    def polytope_vertices(self) -> list[tuple[int, ...]]:
        """Each vertex omits one facet per simplex (global facet indices)."""
        return list(cartesian(*self.facet_blocks()))

    def incident_facets(self, v: tuple[int, ...]) -> list[int]:
        return [j for block in self.facet_blocks() for j in block if j not in v]

    def incident_columns(self, v: tuple[int, ...]) -> list[int]:
        return [self.columns[j] for j in self.incident_facets(v)]


def _dual_basis(columns: Sequence[int]) -> list[int]:
    """Characters ``psi_i`` with ``psi_i(columns[j]) = delta_ij``."""
    m = GlMatrix.from_images(list(columns))
    return list(m.inverse().rows)


def small_cover_graph(cd: CharacteristicData) -> LabelledGraph:
    verts = cd.polytope_vertices()
    vid = {v: "v" + "-".join(map(str, v)) for v in verts}
    cells: list[Cell] = []
    for v in verts:
        facets = cd.incident_facets(v)
        psi = dict(zip(facets, _dual_basis([cd.columns[j] for j in facets])))
        for f, omitted in enumerate(v):
            for j in cd.facet_blocks()[f]:
                if j == omitted:
                    continue
                w = v[:f] + (j,) + v[f + 1 :]
                if vid[w] < vid[v]:
                    continue
                w_facets = cd.incident_facets(w)
                w_psi = dict(zip(w_facets, _dual_basis([cd.columns[x] for x in w_facets])))
                if psi[j] != w_psi[omitted]:
                    raise AssertionError("edge label disagrees at its endpoints")
                cells.append(Cell(psi[j], 1, ((vid[v], vid[w]),)))
    return LabelledGraph(cd.k, cd.k, tuple(vid[v] for v in verts), tuple(cells))


def rp2xrp2_graph() -> LabelledGraph:
    """Three fixed points joined pairwise by two edges with distinct labels."""
    edges = [
        ("top", "left", "1"),
        ("top", "left", "13"),
        ("top", "right", "2"),
        ("top", "right", "23"),
        ("left", "right", "12"),
        ("left", "right", "123"),
    ]
    cells = tuple(
        Cell(char_from_indices(int(d) for d in lab), 1, ((u, w),)) for u, w, lab in edges
    )
    return LabelledGraph(3, 4, ("left", "right", "top"), cells)


# ---------- restriction to the kernel of a generic character


def splitting(rho: int, k: int) -> GlMatrix:
    """Coordinate change of ``G_k`` characters sending ``rho`` to ``rho_k``.

    The pivot is the lowest generator occurring in ``rho``; dropping the last
    coordinate afterwards identifies the quotient by ``rho`` with the
    characters of ``G_(k-1)``.
    """
    check_char(rho, k)
    pivot = (rho & -rho).bit_length() - 1
    cols = [1 << i for i in range(k) if i != pivot] + [rho]
    return GlMatrix.from_images(cols).inverse()


def quotient_char(xi: int, rho: int, k: int) -> int:
    return splitting(rho, k).apply(xi) & ((1 << (k - 1)) - 1)


def quotient_matrix(rho: int, k: int, images: dict[int, int]) -> GlMatrix:
    """The ``GL(k-1)`` factor realizing a prescribed map on cosets modulo ``rho``.

    ``images`` sends ``k - 1`` characters of ``G_k``, independent modulo
    ``rho``, to characters of ``G_(k-1)``; an entry ``rho -> 0`` is allowed.
    """
    pairs = [(quotient_char(a, rho, k), b) for a, b in sorted(images.items()) if a != rho]
    if images.get(rho, 0) != 0:
        raise ValueError("the restricted character must map to 0")
    if len(pairs) != k - 1:
        raise ValueError(f"need images of {k - 1} characters independent modulo {char_name(rho)}")
    return GlMatrix.from_basis_map(pairs)


def restrict_generic(p: RepPolynomial, rho: int, m: GlMatrix | None = None) -> RepPolynomial:
    """Restrict to ``ker rho`` with the deterministic splitting, then apply ``m``."""
    k = p.k
    if k < 2:
        raise ValueError("restriction needs rank at least 2")
    check_char(rho, k)
    if m is not None and m.k != k - 1:
        raise RankError("the automorphism must act on the quotient rank k-1")
    out = []
    for r in p.monomials():
        if rho in r.factors:
            raise ValueError(f"{char_name(rho)} divides {r}; it is not generic")
        image = [quotient_char(x, rho, k) for x in r.factors]
        if m is not None:
            image = [m.apply(x) for x in image]
        rep = GkRep.of(k - 1, image)
        if span_rank(rep.factors) != k - 1:
            raise ValueError(f"restriction of {r} is not faithful")
        out.append(rep)
    return RepPolynomial.from_reps(k - 1, out, p.n)


# ---------- text format


def print_graph(g: LabelledGraph) -> str:
    lines = [f"k {g.k}", f"n {g.n}", "vertices " + " ".join(g.vertices)]
    for c in g.cells:
        lines.append(f"cell label={char_name(c.label)} valence={c.valence}")
        lines.extend(f"  edge {u} {w}" for u, w in c.edges)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> LabelledGraph:
    k = n = None
    vertices: list[str] | None = None
    cells: list[tuple[int, int, list[tuple[str, str]], int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        words = line.split()
        head = words[0]
        col = len(line) - len(line.lstrip()) + 1
        try:
            if head == "k" and len(words) == 2:
                k = check_rank(int(words[1]))
            elif head == "n" and len(words) == 2:
                n = int(words[1])
            elif head == "vertices":
                vertices = words[1:]
            elif head == "cell":
                if k is None:
                    raise ParseError("'k' must precede cells", lineno, col)
                fields = dict(w.split("=", 1) for w in words[1:] if "=" in w)
                if set(fields) != {"label", "valence"} or len(words) != 3:
                    raise ParseError("expected 'cell label=<char> valence=<int>'", lineno, col)
                cells.append((parse_char(fields["label"], k, lineno, col), int(fields["valence"]), [], lineno))
            elif head == "edge" and len(words) == 3:
                if not cells or col == 1:
                    raise ParseError("edge must be indented under a cell", lineno, col)
                cells[-1][2].append((words[1], words[2]))
            else:
                raise ParseError(f"unrecognized line {line.strip()!r}", lineno, col)
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(str(e), lineno, col) from None
    if k is None or n is None or vertices is None:
        raise ParseError("missing 'k', 'n' or 'vertices' line", 1, 1)
    try:
        built = tuple(Cell(label, val, tuple(edges)) for label, val, edges, _ in cells)
    except GraphStructureError as e:
        raise ParseError(str(e), 1, 1) from None
    return LabelledGraph(k, n, tuple(vertices), built)
