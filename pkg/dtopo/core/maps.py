"""
Vertex-level d-maps between complexes.

An admissible map sends vertices to vertices so that every edge goes to an
edge or collapses to a vertex, and the two corner paths of every 2-cube go
to swap-equivalent paths. Each source edge a -> b has a canonical image:
the smallest-id edge f(a) -> f(b), or the empty path when f(a) = f(b).
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from dtopo.core.complex import PrecubicalSet
from dtopo.core.paths import ClassTable, Edges, Pair, default_table, equivalent
from dtopo.errors import AdmissibilityError, BudgetExceeded, ParameterError
from dtopo.logging_config import get_logger
from dtopo.models import ValidationReport, Violation
from dtopo.settings import settings

logger = get_logger(__name__)


def same_complex(A: PrecubicalSet, B: PrecubicalSet) -> bool:
    """Same object, or same name with identical cells."""
    return A is B or (A.name == B.name and A.cells == B.cells)


class AdmissibleMap:
    """A vertex map between two complexes.

    Construction does not check admissibility; use is_admissible or
    check_admissible. Maps yielded by the enumerators are admissible.
    """

    def __init__(self, source: PrecubicalSet, target: PrecubicalSet, vertices: Mapping[str, str],
                 checked: bool = False):
        self.source = source
        self.target = target
        self._vertices = {v: vertices[v] for v in source.vertices if v in vertices}
        self.key: Tuple[Optional[str], ...] = tuple(vertices.get(v) for v in source.vertices)
        if checked:
            self.__dict__["report"] = ValidationReport(name=self.label, passed=True)

    def __call__(self, v: str) -> str:
        try:
            return self._vertices[v]
        except KeyError:
            raise AdmissibilityError(f"vertex {v!r} has no image under {self.label}")

    def items(self) -> List[Tuple[str, str]]:
        return list(self._vertices.items())

    @property
    def vertices(self) -> Dict[str, str]:
        return dict(self._vertices)

    @property
    def label(self) -> str:
        return f"{self.source.name}->{self.target.name}"

    @property
    def is_endomap(self) -> bool:
        return same_complex(self.source, self.target)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AdmissibleMap):
            return NotImplemented
        return (self.key == other.key and same_complex(self.source, other.source)
                and same_complex(self.target, other.target))

    def __hash__(self) -> int:
        return hash((self.source.name, self.target.name, self.key))

    def __repr__(self) -> str:
        body = ",".join(f"{v}:{w}" for v, w in self._vertices.items())
        return f"AdmissibleMap({self.label} {{{body}}})"

    @cached_property
    def report(self) -> ValidationReport:
        return check_admissible(self)

    @property
    def is_admissible(self) -> bool:
        return self.report.passed

    def edge_image(self, edge: str) -> Edges:
        """Canonical image of a source edge: () when it collapses, else the smallest-id target edge."""
        a, b = self(self.source.src(edge)), self(self.source.tgt(edge))
        if a == b:
            return ()
        candidates = self.target.edges_between.get((a, b))
        if not candidates:
            raise AdmissibilityError(f"{self.label}: no edge {a!r} -> {b!r} for the image of {edge!r}")
        return (candidates[0],)

    @cached_property
    def edge_images(self) -> Dict[str, Edges]:
        return {e: self.edge_image(e) for e in self.source.edges}

    def path_image(self, edges: Sequence[str]) -> Edges:
        images = self.edge_images
        result: Tuple[str, ...] = ()
        for e in edges:
            result += images[e]
        return result

    def preimage(self, w: str) -> List[str]:
        return [v for v, image in self._vertices.items() if image == w]


def identity_map(X: PrecubicalSet) -> AdmissibleMap:
    return AdmissibleMap(X, X, {v: v for v in X.vertices}, checked=True)


def constant_map(X: PrecubicalSet, Y: PrecubicalSet, w: str) -> AdmissibleMap:
    if w not in Y.vertices:
        raise ParameterError(f"{w!r} is not a vertex of {Y.name!r}")
    return AdmissibleMap(X, Y, {v: w for v in X.vertices}, checked=True)


def compose(g: AdmissibleMap, f: AdmissibleMap) -> AdmissibleMap:
    """g after f."""
    if not same_complex(f.target, g.source):
        raise ParameterError(f"cannot compose {g.label} after {f.label}")
    return AdmissibleMap(f.source, g.target, {v: g(w) for v, w in f.items()})


def _square_images(X: PrecubicalSet, s: str, image) -> Tuple[Edges, Edges]:
    lower = image(X.face(s, 2, "-")) + image(X.face(s, 1, "+"))
    upper = image(X.face(s, 1, "-")) + image(X.face(s, 2, "+"))
    return lower, upper


def check_admissible(f: AdmissibleMap) -> ValidationReport:
    """Check the vertex, edge and square conditions; violations are report content."""
    X, Y = f.source, f.target
    X.require_valid()
    Y.require_valid()
    violations: List[Violation] = []

    for v in X.vertices:
        w = f._vertices.get(v)
        if w is None or w not in Y.vertices:
            violations.append(Violation(cell=v, kind="unmapped", detail=f"image {w!r} is not a vertex of {Y.name!r}"))
    if violations:
        return ValidationReport(name=f.label, passed=False, violations=violations)

    bad_edges = set()
    for e in X.edges:
        a, b = f(X.src(e)), f(X.tgt(e))
        if a != b and (a, b) not in Y.edges_between:
            bad_edges.add(e)
            violations.append(Violation(cell=e, kind="edge", detail=f"no edge {a!r} -> {b!r} in {Y.name!r}"))

    for s in X.squares:
        faces = [X.face(s, i, sign) for i in (1, 2) for sign in ("-", "+")]
        if bad_edges.intersection(faces):
            continue
        lower, upper = _square_images(X, s, f.edge_image)
        if not equivalent(Y, lower, upper):
            violations.append(Violation(
                cell=s, kind="square",
                detail=f"corner paths map to {lower} and {upper}, which are not swap-equivalent",
            ))

    return ValidationReport(name=f.label, passed=not violations, violations=violations)


@dataclass
class SearchCounter:
    """Counts search nodes across one or more enumerations."""
    budget: Optional[int] = None
    explored: int = 0

    def tick(self) -> None:
        self.explored += 1
        if self.budget is not None and self.explored > self.budget:
            raise BudgetExceeded(self.explored)


def search_order(X: PrecubicalSet) -> List[str]:
    """Vertices ordered by constraint degree: most links to placed vertices first, then degree, then id."""
    degree = {v: len(X.out_edges[v]) + len(X.in_edges[v]) for v in X.vertices}
    neighbours: Dict[str, set] = {v: set() for v in X.vertices}
    for e in X.edges:
        a, b = X.src(e), X.tgt(e)
        if a != b:
            neighbours[a].add(b)
            neighbours[b].add(a)
    order: List[str] = []
    placed: set = set()
    while len(order) < len(X.vertices):
        best = min(
            (v for v in X.vertices if v not in placed),
            key=lambda v: (-len(neighbours[v] & placed), -degree[v], v),
        )
        order.append(best)
        placed.add(best)
    return order


def iter_maps(X: PrecubicalSet, Y: PrecubicalSet, domains: Optional[Mapping[str, Iterable[str]]] = None,
              budget: Optional[int] = None, counter: Optional[SearchCounter] = None) -> Iterator[AdmissibleMap]:
    """
    Lazily enumerate admissible maps X -> Y by backtracking.

    Args:
        X, Y: Valid complexes
        domains: Optional allowed images per source vertex
        budget: Node budget when no counter is given
        counter: Shared node counter

    Raises:
        BudgetExceeded: When the counter runs past its budget
    """
    X.require_valid()
    Y.require_valid()
    if counter is None:
        counter = SearchCounter(budget if budget is not None else settings.DEFAULT_BUDGET)
    domains = domains or {}
    for v, allowed in domains.items():
        unknown = set(allowed) - set(Y.vertices)
        if unknown:
            raise ParameterError(f"domain of {v!r} names unknown vertices {sorted(unknown)}")

    order = search_order(X)
    position = {v: k for k, v in enumerate(order)}
    edge_checks: List[List[str]] = [[] for _ in order]
    square_checks: List[List[str]] = [[] for _ in order]
    for e in X.edges:
        edge_checks[max(position[X.src(e)], position[X.tgt(e)])].append(e)
    for s in X.squares:
        square_checks[max(position[c] for c in X.square_corners(s))].append(s)
    candidates = [sorted(domains[v]) if v in domains else Y.vertices for v in order]

    assignment: Dict[str, str] = {}

    def image(edge: str) -> Edges:
        a, b = assignment[X.src(edge)], assignment[X.tgt(edge)]
        return () if a == b else (Y.edges_between[(a, b)][0],)

    def fits(k: int) -> bool:
        for e in edge_checks[k]:
            a, b = assignment[X.src(e)], assignment[X.tgt(e)]
            if a != b and (a, b) not in Y.edges_between:
                return False
        for s in square_checks[k]:
            lower, upper = _square_images(X, s, image)
            if not equivalent(Y, lower, upper):
                return False
        return True

    def extend(k: int) -> Iterator[AdmissibleMap]:
        if k == len(order):
            yield AdmissibleMap(X, Y, dict(assignment), checked=True)
            return
        v = order[k]
        for w in candidates[k]:
            counter.tick()
            assignment[v] = w
            if fits(k):
                yield from extend(k + 1)
            del assignment[v]

    yield from extend(0)


def enumerate_maps(X: PrecubicalSet, Y: PrecubicalSet, budget: Optional[int] = None,
                   domains: Optional[Mapping[str, Iterable[str]]] = None) -> List[AdmissibleMap]:
    """
    All admissible maps X -> Y in deterministic search order.

    Raises:
        BudgetExceeded: With the maps found so far when the budget runs out
    """
    found: List[AdmissibleMap] = []
    try:
        for f in iter_maps(X, Y, domains=domains, budget=budget):
            found.append(f)
    except BudgetExceeded as e:
        logger.warning(f"Map enumeration {X.name}->{Y.name} stopped after {e.explored} nodes")
        raise BudgetExceeded(e.explored, found)
    logger.info(f"Enumerated {len(found)} admissible maps {X.name}->{Y.name}")
    return found


@dataclass(frozen=True)
class PspResult:
    """Outcome of a psp check; truthy when the map is psp."""
    holds: bool
    relative_to_bound: bool = False
    failing_pair: Optional[Pair] = None

    def __bool__(self) -> bool:
        return self.holds


def check_psp(f: AdmissibleMap, source_table: Optional[ClassTable] = None,
              target_table: Optional[ClassTable] = None) -> PspResult:
    """
    Check that f induces a bijection on classes for every reachable pair of its source.

    Raises:
        AdmissibilityError: If f is not admissible
    """
    if not f.is_admissible:
        raise AdmissibilityError(f"map {f.label} is not admissible")
    source_table = source_table or default_table(f.source)
    target_table = target_table or default_table(f.target)
    bounded = source_table.lower_bound or target_table.lower_bound

    for x, y in source_table.pairs:
        image_pair = (f(x), f(y))
        found = source_table.get(x, y)
        if len(found) != target_table.count(*image_pair):
            return PspResult(False, bounded, (x, y))
        images = {target_table.class_id_of(image_pair, f.path_image(c.representative.edges)) for c in found}
        if None in images or len(images) != len(found):
            return PspResult(False, bounded, (x, y))
    return PspResult(True, bounded)


def psp_on_image(f: AdmissibleMap, h: AdmissibleMap) -> PspResult:
    """Whether f is psp on every pair in the image of h, that is f after h is psp."""
    return check_psp(compose(f, h))


@dataclass
class LevelReport:
    """Which vertex levels of a boundary cube an endomap keeps in place."""
    map: AdmissibleMap
    fixes_bottom: bool
    fixes_top: bool
    preserved_levels: List[int] = field(default_factory=list)


def vertex_level_report(maps: Iterable[AdmissibleMap]) -> List[LevelReport]:
    """Vertex levels V_k (binary words with k ones) preserved by each endomap of a cube-like complex."""
    reports = []
    for f in maps:
        n = len(f.source.vertices[0])
        levels: Dict[int, List[str]] = {}
        for v in f.source.vertices:
            levels.setdefault(v.count("1"), []).append(v)
        preserved = [k for k, members in sorted(levels.items()) if all(f(v).count("1") == k for v in members)]
        bottom, top = "0" * n, "1" * n
        reports.append(LevelReport(
            map=f,
            fixes_bottom=bottom in f.source.vertices and f(bottom) == bottom,
            fixes_top=top in f.source.vertices and f(top) == top,
            preserved_levels=preserved,
        ))
    return reports
