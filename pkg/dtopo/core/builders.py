"""
Named complexes.

Cubes use words over {0, 1, *}: a word with k stars is a k-cell and
d_i^- / d_i^+ replace its i-th star by 0 / 1. Grid complexes name the
vertex at (x, y) 'xy', the edge from (x, y) to (x+1, y) 'hxy', the edge
from (x, y) to (x, y+1) 'vxy' and the square with lower-left corner (x, y)
'sxy'.
"""

from itertools import product as cartesian
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from dtopo.core.complex import Cell, PrecubicalSet, product
from dtopo.errors import ParameterError
from dtopo.logging_config import get_logger

logger = get_logger(__name__)


def _cube_cells(n: int, include_top: bool) -> List[Cell]:
    cells = []
    for letters in cartesian("01*", repeat=n):
        word = "".join(letters)
        stars = [k for k, ch in enumerate(word) if ch == "*"]
        if not include_top and len(stars) == n:
            continue
        faces = tuple(
            (word[:k] + "0" + word[k + 1:], word[:k] + "1" + word[k + 1:])
            for k in stars
        )
        cells.append(Cell(word, len(stars), faces))
    return cells


def _edge(edge_id: str, a: str, b: str) -> Cell:
    return Cell(edge_id, 1, ((a, b),))


def _square(square_id: str, left: str, right: str, bottom: str, top: str) -> Cell:
    return Cell(square_id, 2, ((left, right), (bottom, top)))


def _grid_cells(size: int, holes: Iterable[Tuple[int, int]] = ()) -> List[Cell]:
    holes = set(holes)
    cells = [Cell(f"{x}{y}", 0) for x in range(size) for y in range(size)]
    for x in range(size):
        for y in range(size):
            if x + 1 < size:
                cells.append(_edge(f"h{x}{y}", f"{x}{y}", f"{x + 1}{y}"))
            if y + 1 < size:
                cells.append(_edge(f"v{x}{y}", f"{x}{y}", f"{x}{y + 1}"))
    for x in range(size - 1):
        for y in range(size - 1):
            if (x, y) in holes:
                continue
            cells.append(_square(f"s{x}{y}", f"v{x}{y}", f"v{x + 1}{y}", f"h{x}{y}", f"h{x}{y + 1}"))
    return cells


def cube(n: int) -> PrecubicalSet:
    """The standard n-cube with 3^n cells."""
    return PrecubicalSet(_cube_cells(n, include_top=True), name=f"cube-{n}")


def boundary_cube(n: int) -> PrecubicalSet:
    """The n-cube without its top cell."""
    return PrecubicalSet(_cube_cells(n, include_top=False), name=f"boundary-cube-{n}")


def point() -> PrecubicalSet:
    return PrecubicalSet([Cell("pt", 0)], name="point")


def circle() -> PrecubicalSet:
    """One vertex and one loop edge."""
    return PrecubicalSet([Cell("v", 0), _edge("e", "v", "v")], name="circle")


def torus(n: int) -> PrecubicalSet:
    result = PrecubicalSet(circle().cells, name="torus-1")
    for k in range(2, n + 1):
        result = product(result, circle(), name=f"torus-{k}")
    return result


def branch() -> PrecubicalSet:
    """Future branching: the origin O with edges to R and U."""
    cells = [Cell("O", 0), Cell("R", 0), Cell("U", 0), _edge("OR", "O", "R"), _edge("OU", "O", "U")]
    return PrecubicalSet(cells, name="branch")


def letter_w() -> PrecubicalSet:
    """Vertices A..E with edges B->A, B->C, D->C, D->E."""
    cells = [Cell(v, 0) for v in "ABCDE"]
    cells += [_edge(a + b, a, b) for a, b in ("BA", "BC", "DC", "DE")]
    return PrecubicalSet(cells, name="letter-w")


def swiss_grid() -> PrecubicalSet:
    """3x3 grid of squares without the centre 2-cell; the hole's boundary stays."""
    return PrecubicalSet(_grid_cells(4, holes=[(1, 1)]), name="swiss-grid")


def dubut_d() -> PrecubicalSet:
    """Squares A, B1, B2, C glued along edges.

    A = [0,1]^2, B1 = [1,2]x[0,1], B2 = [0,1]x[1,2]. The corner (0,2) is
    identified with (2,0); C has left edge v20 (B1's right edge) and bottom
    edge h02 (B2's top edge), and a new top-right corner 'c'.
    """
    cells = [Cell(v, 0) for v in ("00", "10", "20", "01", "11", "21", "12", "c")]
    cells += [
        _edge("h00", "00", "10"),
        _edge("h10", "10", "20"),
        _edge("h01", "01", "11"),
        _edge("h11", "11", "21"),
        _edge("h02", "20", "12"),
        _edge("v00", "00", "01"),
        _edge("v10", "10", "11"),
        _edge("v20", "20", "21"),
        _edge("v01", "01", "20"),
        _edge("v11", "11", "12"),
        _edge("hc", "21", "c"),
        _edge("vc", "12", "c"),
        _square("A", "v00", "v10", "h00", "h01"),
        _square("B1", "v10", "v20", "h10", "h11"),
        _square("B2", "v01", "v11", "h01", "h02"),
        _square("C", "v20", "vc", "h02", "hc"),
    ]
    return PrecubicalSet(cells, name="dubut-d")


def graph(edge_list: str) -> PrecubicalSet:
    """Directed graph from 'a>b,b>c'; repeated edges get '#k' suffixes."""
    cells: Dict[str, Cell] = {}
    edges: List[Cell] = []
    for token in filter(None, (t.strip() for t in edge_list.split(","))):
        if token.count(">") != 1:
            raise ParameterError(f"bad edge {token!r}, expected 'source>target'")
        a, b = (part.strip() for part in token.split(">"))
        if not a or not b:
            raise ParameterError(f"bad edge {token!r}, expected 'source>target'")
        for v in (a, b):
            cells.setdefault(v, Cell(v, 0))
        edge_id = f"{a}>{b}"
        k = 2
        while any(e.id == edge_id for e in edges):
            edge_id = f"{a}>{b}#{k}"
            k += 1
        edges.append(_edge(edge_id, a, b))
    if not cells:
        raise ParameterError("graph needs at least one edge")
    return PrecubicalSet(list(cells.values()) + edges, name="graph")


def _positive(params: Sequence[str], name: str) -> int:
    if len(params) != 1:
        raise ParameterError(f"{name} takes exactly one integer parameter")
    try:
        n = int(params[0])
    except ValueError:
        raise ParameterError(f"{name} parameter must be an integer, got {params[0]!r}")
    if n < 1:
        raise ParameterError(f"{name} needs n >= 1, got {n}")
    return n


def _no_params(builder: Callable[[], PrecubicalSet], name: str):
    def build(params: Sequence[str]) -> PrecubicalSet:
        if params:
            raise ParameterError(f"{name} takes no parameters")
        return builder()
    return build


_BUILDERS: Dict[str, Tuple[str, Callable[[Sequence[str]], PrecubicalSet]]] = {
    "cube": ("n", lambda p: cube(_positive(p, "cube"))),
    "boundary-cube": ("n", lambda p: boundary_cube(_positive(p, "boundary-cube"))),
    "torus": ("n", lambda p: torus(_positive(p, "torus"))),
    "circle": ("", _no_params(circle, "circle")),
    "branch": ("", _no_params(branch, "branch")),
    "letter-w": ("", _no_params(letter_w, "letter-w")),
    "dubut-d": ("", _no_params(dubut_d, "dubut-d")),
    "swiss-grid": ("", _no_params(swiss_grid, "swiss-grid")),
    "point": ("", _no_params(point, "point")),
    "graph": ("edges", lambda p: graph(",".join(p))),
}


def list_named() -> List[Tuple[str, str]]:
    """Builder names with their parameter description."""
    return sorted((name, arity) for name, (arity, _) in _BUILDERS.items())


def build_named(name: str, *params) -> PrecubicalSet:
    """Build and validate a named complex, e.g. build_named('boundary-cube', 2)."""
    try:
        _, builder = _BUILDERS[name]
    except KeyError:
        raise ParameterError(f"unknown complex {name!r}; known: {', '.join(sorted(_BUILDERS))}")
    result = builder([str(p) for p in params])
    result.require_valid()
    logger.info(f"Built {result!r}")
    return result


def parse_builder_spec(spec: str) -> Optional[PrecubicalSet]:
    """Build from 'name' or 'name:param' (e.g. 'cube:3'); None if name is unknown."""
    name, _, param = spec.partition(":")
    if name not in _BUILDERS:
        return None
    return build_named(name, *([param] if param else []))
