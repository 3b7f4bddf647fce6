"""
Directed edge paths and their dihomotopy classes.

Two edge paths are elementarily equivalent when one is obtained from the
other by replacing the corner path (bottom, right) of a 2-cube by
(left, top) or back. Classes are the equivalence classes of this relation;
they model the path components of trace spaces between vertices.
"""

import threading
import weakref
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, Iterator, List, Optional, Sequence, Set, Tuple

from dtopo.core.complex import PrecubicalSet, is_loop_free
from dtopo.core.utils import DisjointSet
from dtopo.errors import AdmissibilityError, LoopError, ParameterError, PathError
from dtopo.logging_config import get_logger
from dtopo.settings import settings

if TYPE_CHECKING:
    from dtopo.core.maps import AdmissibleMap

logger = get_logger(__name__)

Edges = Tuple[str, ...]
Pair = Tuple[str, str]


@dataclass(frozen=True, order=True)
class EdgePath:
    """A directed edge path; the empty sequence is the constant path at src."""
    edges: Edges
    src: str
    tgt: str

    def __len__(self) -> int:
        return len(self.edges)

    def then(self, other: "EdgePath") -> "EdgePath":
        if self.tgt != other.src:
            raise PathError(f"cannot concatenate a path ending at {self.tgt!r} with one starting at {other.src!r}")
        return EdgePath(self.edges + other.edges, self.src, other.tgt)


def make_path(X: PrecubicalSet, edges: Sequence[str], src: Optional[str] = None) -> EdgePath:
    """
    Build a path from an edge sequence, checking that consecutive edges compose.

    Raises:
        PathError: If an edge is unknown or consecutive edges do not compose
    """
    edges = tuple(edges)
    if not edges:
        if src is None or src not in X.vertices:
            raise PathError("a constant path needs a known source vertex")
        return EdgePath((), src, src)
    for e in edges:
        if e not in X or X.cell(e).dim != 1:
            raise PathError(f"{e!r} is not an edge of {X.name!r}")
    if src is not None and X.src(edges[0]) != src:
        raise PathError(f"path starts at {X.src(edges[0])!r}, not {src!r}")
    for a, b in zip(edges, edges[1:]):
        if X.tgt(a) != X.src(b):
            raise PathError(f"edges {a!r} and {b!r} do not compose")
    return EdgePath(edges, X.src(edges[0]), X.tgt(edges[-1]))


@dataclass(frozen=True)
class DihoClass:
    """A dihomotopy class of edge paths; members are sorted, the representative is the smallest."""
    pair: Pair
    class_id: int
    representative: EdgePath
    members: Tuple[EdgePath, ...] = field(default=(), compare=False, repr=False)

    @property
    def src(self) -> str:
        return self.pair[0]

    @property
    def tgt(self) -> str:
        return self.pair[1]


def _check_bound(X: PrecubicalSet, max_len: Optional[int]) -> None:
    if max_len is not None and max_len < 0:
        raise ParameterError(f"max_len must be non-negative, got {max_len}")
    if max_len is None and not is_loop_free(X):
        raise LoopError(
            f"complex {X.name!r} has directed loops; enumerating paths needs a max_len bound"
        )


def _walk(X: PrecubicalSet, x: str, y: str, max_len: Optional[int]) -> List[Edges]:
    """All edge sequences x -> y in lexicographic order, pruned by reachability."""
    if not X.reach.reachable(x, y):
        return []
    found: List[Edges] = []
    trail: List[str] = []

    def visit(v: str) -> None:
        if v == y:
            found.append(tuple(trail))
        if max_len is not None and len(trail) >= max_len:
            return
        for e in X.out_edges[v]:
            w = X.tgt(e)
            if X.reach.reachable(w, y):
                trail.append(e)
                visit(w)
                trail.pop()

    visit(x)
    found.sort()
    return found


def enumerate_paths(X: PrecubicalSet, x: str, y: str, max_len: Optional[int] = None) -> List[EdgePath]:
    """
    Enumerate directed edge paths from x to y.

    Args:
        X: A valid complex
        x, y: Vertex ids
        max_len: Length bound; required when X has directed loops

    Returns:
        Paths in lexicographic order of their edge ids

    Raises:
        LoopError: If X has loops and no bound was given
    """
    X.require_valid()
    _check_bound(X, max_len)
    return [EdgePath(edges, x, y) for edges in _walk(X, x, y, max_len)]


def swap_step(X: PrecubicalSet, p: EdgePath, position: int, square: str) -> EdgePath:
    """
    Replace the two edges of p at position by the opposite corner path of square.

    Raises:
        PathError: If those edges are not a corner path of the square
    """
    if square not in X or X.cell(square).dim != 2:
        raise PathError(f"{square!r} is not a 2-cube of {X.name!r}")
    if not 0 <= position < len(p.edges) - 1:
        raise PathError(f"no edge pair at position {position} of a path of length {len(p)}")
    corner = p.edges[position:position + 2]
    for s, replacement in X.corner_swaps.get(corner, []):
        if s == square:
            edges = p.edges[:position] + replacement + p.edges[position + 2:]
            return EdgePath(edges, p.src, p.tgt)
    raise PathError(f"edges {corner} do not bound a corner of square {square!r}")


def swap_neighbours(X: PrecubicalSet, edges: Edges) -> Iterator[Edges]:
    for position in range(len(edges) - 1):
        for _, replacement in X.corner_swaps.get(edges[position:position + 2], []):
            yield edges[:position] + replacement + edges[position + 2:]


def swap_closure(X: PrecubicalSet, edges: Edges) -> Set[Edges]:
    """All edge sequences reachable from edges by elementary swaps."""
    seen = {edges}
    queue = deque([edges])
    while queue:
        current = queue.popleft()
        for nxt in swap_neighbours(X, current):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _partition(X: PrecubicalSet, x: str, y: str, found: List[Edges]) -> List[DihoClass]:
    index = {edges: i for i, edges in enumerate(found)}
    dsu = DisjointSet(len(found))
    for i, edges in enumerate(found):
        for nxt in swap_neighbours(X, edges):
            j = index.get(nxt)
            if j is not None:
                dsu.union(i, j)
    result = []
    for class_id, block in enumerate(dsu.groups()):
        members = tuple(EdgePath(found[i], x, y) for i in block)
        result.append(DihoClass((x, y), class_id, members[0], members))
    return result


def classes(X: PrecubicalSet, x: str, y: str, max_len: Optional[int] = None) -> List[DihoClass]:
    """
    Dihomotopy classes of the paths from x to y.

    Class ids follow the order of the smallest member of each class.

    Raises:
        LoopError: If X has loops and no bound was given
    """
    X.require_valid()
    _check_bound(X, max_len)
    return _partition(X, x, y, _walk(X, x, y, max_len))


class ClassTable:
    """Dihomotopy classes for every reachable vertex pair of a complex.

    The table is exhaustive when the complex is loop-free and the bound (if
    any) does not cut paths short; otherwise counts are lower bounds.
    """

    def __init__(self, X: PrecubicalSet, max_len: Optional[int] = None, workers: Optional[int] = None):
        X.require_valid()
        _check_bound(X, max_len)
        self.complex = X
        longest = len(X.vertices) - 1
        self.exhaustive = is_loop_free(X) and (max_len is None or max_len >= longest)
        self.max_len = None if self.exhaustive else max_len

        pairs = X.reach.pairs
        workers = workers or settings.WORKERS

        def compute(pair: Pair) -> List[DihoClass]:
            return _partition(X, pair[0], pair[1], _walk(X, pair[0], pair[1], self.max_len))

        try:
            if workers > 1 and len(pairs) > 1:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    results = list(pool.map(compute, pairs))
            else:
                results = [compute(pair) for pair in pairs]
        except Exception as e:
            logger.error(f"Failed to build class table for {X.name!r}: {e}")
            raise

        self._classes: Dict[Pair, List[DihoClass]] = dict(zip(pairs, results))
        self._index: Dict[Pair, Dict[Edges, int]] = {
            pair: {m.edges: c.class_id for c in found for m in c.members}
            for pair, found in self._classes.items()
        }
        logger.info(
            f"Class table for {X.name!r}: {len(pairs)} pairs, "
            f"{sum(len(c) for c in self._classes.values())} classes ({self.mode})"
        )

    @property
    def mode(self) -> str:
        return "exhaustive" if self.exhaustive else "bounded"

    @property
    def lower_bound(self) -> bool:
        return not self.exhaustive

    @property
    def pairs(self) -> List[Pair]:
        return list(self._classes)

    def get(self, x: str, y: str) -> List[DihoClass]:
        return self._classes.get((x, y), [])

    def count(self, x: str, y: str) -> int:
        return len(self.get(x, y))

    def class_id_of(self, pair: Pair, edges: Edges) -> Optional[int]:
        """Class id of an edge sequence between the pair, or None if it is outside the table."""
        known = self._index.get(pair)
        if known is None:
            return None
        class_id = known.get(edges)
        if class_id is None and not self.exhaustive:
            for other in swap_closure(self.complex, edges):
                if other in known:
                    return known[other]
        return class_id

    def class_of(self, path: EdgePath) -> DihoClass:
        class_id = self.class_id_of((path.src, path.tgt), path.edges)
        if class_id is None:
            raise PathError(f"path {path.edges} is outside the class table of {self.complex.name!r}")
        return self._classes[(path.src, path.tgt)][class_id]

    def representative(self, pair: Pair, class_id: int) -> EdgePath:
        return self._classes[pair][class_id].representative


_TABLES: "weakref.WeakKeyDictionary[PrecubicalSet, Dict[Optional[int], ClassTable]]" = weakref.WeakKeyDictionary()
_TABLES_LOCK = threading.RLock()


def class_table(X: PrecubicalSet, max_len: Optional[int] = None, workers: Optional[int] = None) -> ClassTable:
    """Class table of X, built once per (complex, bound)."""
    with _TABLES_LOCK:
        per_bound = _TABLES.setdefault(X, {})
        if max_len not in per_bound:
            per_bound[max_len] = ClassTable(X, max_len=max_len, workers=workers)
        return per_bound[max_len]


def default_table(X: PrecubicalSet) -> ClassTable:
    """Exhaustive table for loop-free X, else the table bounded by the configured max_len."""
    return class_table(X, None if is_loop_free(X) else settings.DEFAULT_MAX_LEN)


def equivalent(X: PrecubicalSet, p: Edges, q: Edges, pair: Optional[Pair] = None,
               table: Optional[ClassTable] = None) -> bool:
    """True iff the edge sequences p and q are swap-equivalent in X."""
    if len(p) != len(q):
        return False
    if p == q:
        return True
    if table is not None and pair is not None:
        a = table.class_id_of(pair, p)
        b = table.class_id_of(pair, q)
        if a is not None and b is not None:
            return a == b
    return q in swap_closure(X, p)


def concat_class(X: PrecubicalSet, c1: DihoClass, c2: DihoClass, table: Optional[ClassTable] = None) -> DihoClass:
    """
    Class of the concatenation of representatives of c1 and c2.

    Raises:
        PathError: If c1 does not end where c2 starts
    """
    if c1.tgt != c2.src:
        raise PathError(f"class ending at {c1.tgt!r} cannot be followed by one starting at {c2.src!r}")
    table = table or class_table(X)
    return table.class_of(c1.representative.then(c2.representative))


def induced_class_map(f: "AdmissibleMap", pair: Pair, source_table: Optional[ClassTable] = None,
                      target_table: Optional[ClassTable] = None) -> Dict[int, int]:
    """
    Map classes(X, x, y) to classes(Y, f x, f y) through image paths.

    Raises:
        AdmissibilityError: If f is not admissible
    """
    if not f.is_admissible:
        raise AdmissibilityError(f"map {f} is not admissible")
    source_table = source_table or class_table(f.source)
    target_table = target_table or class_table(f.target)
    image_pair = (f(pair[0]), f(pair[1]))
    mapping: Dict[int, int] = {}
    for c in source_table.get(*pair):
        image = f.path_image(c.representative.edges)
        class_id = target_table.class_id_of(image_pair, image)
        if class_id is None:
            raise PathError(f"image of {c.representative.edges} is outside the class table of {f.target.name!r}")
        mapping[c.class_id] = class_id
    return mapping
