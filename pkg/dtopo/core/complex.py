"""
Finite pre-cubical sets: representation, validation and vertex reachability.

Cells carry string ids and explicit face tables, so arbitrary gluings are
first-class. Face indices are 1-based and signs are '-' and '+'. For an
edge, d_1^- is the source and d_1^+ the target. For a 2-cube, d_1^-/d_1^+
are its left/right edges and d_2^-/d_2^+ its bottom/top edges.
"""

from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from dtopo.errors import ComplexError
from dtopo.logging_config import get_logger
from dtopo.models import ValidationReport, Violation

logger = get_logger(__name__)

SIGNS = ("-", "+")
PRODUCT_SEPARATOR = "|"


@dataclass(frozen=True)
class Cell:
    """A cell of dimension dim; faces[i-1] holds (d_i^-, d_i^+), None where missing."""
    id: str
    dim: int
    faces: Tuple[Tuple[Optional[str], Optional[str]], ...] = ()

    def face(self, i: int, sign: str) -> Optional[str]:
        if not 1 <= i <= len(self.faces):
            return None
        return self.faces[i - 1][SIGNS.index(sign)]


@dataclass(frozen=True)
class ReachabilityTable:
    """Reflexive-transitive closure of the edge relation on vertices."""
    vertices: Tuple[str, ...]
    up: Mapping[str, FrozenSet[str]]
    down: Mapping[str, FrozenSet[str]] = field(repr=False)

    def reachable(self, x: str, y: str) -> bool:
        return y in self.up.get(x, ())

    @cached_property
    def pairs(self) -> List[Tuple[str, str]]:
        return [(x, y) for x in self.vertices for y in sorted(self.up[x])]

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return self.reachable(*pair)


class PrecubicalSet:
    """A finite graded cell complex with face maps.

    Instances are immutable; derived tables are computed once on demand.
    Construction does not validate, so broken complexes can still be
    reported on. Operations that need a valid complex call require_valid().
    """

    def __init__(self, cells: Iterable[Cell], name: str = ""):
        self.name = name
        self._cells: Dict[str, Cell] = {}
        self.duplicate_ids: List[str] = []
        for cell in cells:
            if cell.id in self._cells:
                self.duplicate_ids.append(cell.id)
                continue
            self._cells[cell.id] = cell

    def __repr__(self) -> str:
        counts = ", ".join(f"{dim}:{n}" for dim, n in sorted(self.counts().items()))
        return f"PrecubicalSet({self.name!r}, cells={{{counts}}})"

    def __len__(self) -> int:
        return len(self._cells)

    def __contains__(self, cell_id: str) -> bool:
        return cell_id in self._cells

    @cached_property
    def cells(self) -> List[Cell]:
        """Cells in canonical (dim, id) order."""
        return sorted(self._cells.values(), key=lambda c: (c.dim, c.id))

    def cell(self, cell_id: str) -> Cell:
        try:
            return self._cells[cell_id]
        except KeyError:
            raise ComplexError(f"unknown cell {cell_id!r} in complex {self.name!r}")

    def cells_of_dim(self, dim: int) -> List[str]:
        return [c.id for c in self.cells if c.dim == dim]

    def counts(self) -> Dict[int, int]:
        result: Dict[int, int] = {}
        for c in self._cells.values():
            result[c.dim] = result.get(c.dim, 0) + 1
        return result

    @property
    def dimension(self) -> int:
        return max((c.dim for c in self._cells.values()), default=-1)

    @cached_property
    def vertices(self) -> List[str]:
        return self.cells_of_dim(0)

    @cached_property
    def edges(self) -> List[str]:
        return self.cells_of_dim(1)

    @cached_property
    def squares(self) -> List[str]:
        return self.cells_of_dim(2)

    def face(self, cell_id: str, i: int, sign: str) -> Optional[str]:
        return self.cell(cell_id).face(i, sign)

    def src(self, edge: str) -> str:
        return self._cells[edge].faces[0][0]

    def tgt(self, edge: str) -> str:
        return self._cells[edge].faces[0][1]

    @cached_property
    def out_edges(self) -> Dict[str, List[str]]:
        table: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            table[self.src(e)].append(e)
        return table

    @cached_property
    def in_edges(self) -> Dict[str, List[str]]:
        table: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            table[self.tgt(e)].append(e)
        return table

    @cached_property
    def edges_between(self) -> Dict[Tuple[str, str], List[str]]:
        """Edges grouped by (source, target), each list sorted by id."""
        table: Dict[Tuple[str, str], List[str]] = {}
        for e in self.edges:
            table.setdefault((self.src(e), self.tgt(e)), []).append(e)
        return table

    def square_corners(self, square: str) -> Tuple[str, str, str, str]:
        """Corners (00, 10, 01, 11) of a 2-cube."""
        bottom = self.face(square, 2, "-")
        top = self.face(square, 2, "+")
        return self.src(bottom), self.tgt(bottom), self.src(top), self.tgt(top)

    @cached_property
    def corner_swaps(self) -> Dict[Tuple[str, str], List[Tuple[str, Tuple[str, str]]]]:
        """Two-edge corner paths of 2-cubes mapped to (square, opposite corner path)."""
        table: Dict[Tuple[str, str], List[Tuple[str, Tuple[str, str]]]] = {}
        for s in self.squares:
            lower = (self.face(s, 2, "-"), self.face(s, 1, "+"))
            upper = (self.face(s, 1, "-"), self.face(s, 2, "+"))
            table.setdefault(lower, []).append((s, upper))
            table.setdefault(upper, []).append((s, lower))
        return table

    @cached_property
    def graph(self) -> nx.DiGraph:
        """Vertex graph of the 1-skeleton."""
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges_between.keys())
        return g

    @cached_property
    def validation(self) -> ValidationReport:
        return validate(self)

    @property
    def is_valid(self) -> bool:
        return self.validation.passed

    def require_valid(self) -> None:
        if not self.is_valid:
            first = self.validation.violations[0]
            raise ComplexError(
                f"complex {self.name!r} is invalid: {len(self.validation.violations)} violation(s), "
                f"first at cell {first.cell!r} ({first.kind})"
            )

    @cached_property
    def reach(self) -> ReachabilityTable:
        return reachability(self)


def _face_chain(X: PrecubicalSet, cell_id: str, steps: Iterable[Tuple[int, str]]) -> Optional[str]:
    current = cell_id
    for i, sign in steps:
        if current not in X:
            return None
        current = X.cell(current).face(i, sign)
        if current is None:
            return None
    return current if current in X else None


def validate(X: PrecubicalSet) -> ValidationReport:
    """Check face targets and the pre-cubical relations on every cell.

    Violations are report content; this function never raises for an
    invalid complex.
    """
    violations: List[Violation] = [
        Violation(cell=cell_id, kind="duplicate", detail="cell id used more than once")
        for cell_id in X.duplicate_ids
    ]

    for c in X.cells:
        if len(c.faces) != c.dim:
            violations.append(Violation(cell=c.id, kind="missing-face",
                                        detail=f"expected {c.dim} face indices, found {len(c.faces)}"))
        for i in range(1, c.dim + 1):
            for sign in SIGNS:
                target = c.face(i, sign)
                if target is None:
                    violations.append(Violation(cell=c.id, kind="missing-face", i=i, alpha=sign,
                                                detail=f"d_{i}^{sign} is not defined"))
                elif target not in X:
                    violations.append(Violation(cell=c.id, kind="dangling", i=i, alpha=sign,
                                                detail=f"d_{i}^{sign} refers to unknown cell {target!r}"))
                elif X.cell(target).dim != c.dim - 1:
                    violations.append(Violation(cell=c.id, kind="dimension", i=i, alpha=sign,
                                                detail=f"d_{i}^{sign} = {target!r} has dimension {X.cell(target).dim}"))

        # d_i^a d_j^b = d_{j-1}^b d_i^a for i < j
        for j in range(2, c.dim + 1):
            for i in range(1, j):
                for alpha in SIGNS:
                    for beta in SIGNS:
                        lhs = _face_chain(X, c.id, [(j, beta), (i, alpha)])
                        rhs = _face_chain(X, c.id, [(i, alpha), (j - 1, beta)])
                        if lhs is not None and rhs is not None and lhs != rhs:
                            violations.append(Violation(
                                cell=c.id, kind="relation", i=i, j=j, alpha=alpha, beta=beta,
                                detail=f"d_{i}^{alpha} d_{j}^{beta} = {lhs!r} but d_{j - 1}^{beta} d_{i}^{alpha} = {rhs!r}",
                            ))

    if violations:
        logger.info(f"Complex {X.name!r}: {len(violations)} validation violation(s)")
    return ValidationReport(name=X.name, passed=not violations, violations=violations)


def is_non_self_linked(X: PrecubicalSet) -> bool:
    """True iff every n-cube has 2^i * C(n, i) distinct iterated (n-i)-faces."""
    X.require_valid()
    for c in X.cells:
        level = {c.id}
        for i in range(1, c.dim + 1):
            level = {
                X.face(x, k, sign)
                for x in level
                for k in range(1, X.cell(x).dim + 1)
                for sign in SIGNS
            }
            if len(level) != 2 ** i * comb(c.dim, i):
                logger.debug(f"Cell {c.id!r} is self-linked at depth {i}")
                return False
    return True


def product(X: PrecubicalSet, Y: PrecubicalSet, name: Optional[str] = None) -> PrecubicalSet:
    """Cartesian product; cell (c, d) has id 'c|d' and dimension dim c + dim d.

    Face index i acts on the first factor for i <= dim c and on the second
    factor, shifted by dim c, otherwise.
    """
    X.require_valid()
    Y.require_valid()
    cells = []
    for c in X.cells:
        for d in Y.cells:
            faces = [
                (f"{c.faces[i][0]}{PRODUCT_SEPARATOR}{d.id}", f"{c.faces[i][1]}{PRODUCT_SEPARATOR}{d.id}")
                for i in range(c.dim)
            ]
            faces += [
                (f"{c.id}{PRODUCT_SEPARATOR}{d.faces[i][0]}", f"{c.id}{PRODUCT_SEPARATOR}{d.faces[i][1]}")
                for i in range(d.dim)
            ]
            cells.append(Cell(f"{c.id}{PRODUCT_SEPARATOR}{d.id}", c.dim + d.dim, tuple(faces)))
    result = PrecubicalSet(cells, name=name or f"{X.name}x{Y.name}")
    result.require_valid()
    return result


def relabel(X: PrecubicalSet, mapping: Mapping[str, str], name: Optional[str] = None) -> PrecubicalSet:
    """Copy of X with cell ids renamed through mapping (missing ids kept)."""
    rename = lambda cell_id: mapping.get(cell_id, cell_id)
    cells = [
        Cell(rename(c.id), c.dim, tuple((rename(m), rename(p)) for m, p in c.faces))
        for c in X.cells
    ]
    return PrecubicalSet(cells, name=name or X.name)


def reachability(X: PrecubicalSet) -> ReachabilityTable:
    """Reflexive-transitive closure of the directed edge relation."""
    X.require_valid()
    up = {v: frozenset(nx.descendants(X.graph, v) | {v}) for v in X.vertices}
    down: Dict[str, set] = {v: set() for v in X.vertices}
    for x, ys in up.items():
        for y in ys:
            down[y].add(x)
    table = ReachabilityTable(
        vertices=tuple(X.vertices),
        up=up,
        down={v: frozenset(xs) for v, xs in down.items()},
    )
    logger.info(f"Reachability of {X.name!r}: {len(table)} pairs over {len(X.vertices)} vertices")
    return table


def is_loop_free(X: PrecubicalSet) -> bool:
    """True iff no vertex reaches itself through a nonempty edge path."""
    X.require_valid()
    return nx.is_directed_acyclic_graph(X.graph)


def initial_vertices(X: PrecubicalSet) -> List[str]:
    """Vertices whose past is themselves."""
    return [v for v in X.vertices if X.reach.down[v] == {v}]


def terminal_vertices(X: PrecubicalSet) -> List[str]:
    """Vertices whose future is themselves."""
    return [v for v in X.vertices if X.reach.up[v] == {v}]


def _bounds_common_square(X: PrecubicalSet, e1: str, e2: str, outgoing: bool) -> bool:
    for s in X.squares:
        if outgoing:
            pair = {X.face(s, 2, "-"), X.face(s, 1, "-")}
        else:
            pair = {X.face(s, 1, "+"), X.face(s, 2, "+")}
        if pair == {e1, e2}:
            return True
    return False


def singular_vertices(X: PrecubicalSet) -> List[str]:
    """Vertices with two out-edges (or two in-edges) not spanning a 2-cube at that corner."""
    X.require_valid()
    result = []
    for v in X.vertices:
        found = False
        for edges, outgoing in ((X.out_edges[v], True), (X.in_edges[v], False)):
            for a in range(len(edges)):
                for b in range(a + 1, len(edges)):
                    if not _bounds_common_square(X, edges[a], edges[b], outgoing):
                        found = True
        if found:
            result.append(v)
    return result


def pinned_vertices(X: PrecubicalSet) -> List[str]:
    """Singular vertices that are neither a least nor a greatest vertex of X.

    Every map on a psp witness chain starting at the identity fixes them.
    """
    everything = frozenset(X.vertices)
    return [
        v for v in singular_vertices(X)
        if X.reach.up[v] != everything and X.reach.down[v] != everything
    ]
