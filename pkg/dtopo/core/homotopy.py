"""
Combinatorial directed homotopies between admissible maps.

A future witness from f to g assigns to every source vertex v a path
f(v) -> g(v) such that for every source edge e: a -> b the paths
f(e)·w(b) and w(a)·g(e) lie in the same class. A past witness from f to g
assigns paths g(v) -> f(v) with w(a)·f(e) ~ g(e)·w(b). Neutral (0)
homotopies are zig-zags of either kind.

Inessential endomaps are those linked to the identity by a chain whose maps
are all psp and keep the pinned vertices in place; rather inessential maps
and directed homotopy equivalences are built on top of them.
"""

import threading
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from dtopo.core.complex import PrecubicalSet, initial_vertices, pinned_vertices, terminal_vertices
from dtopo.core.maps import (
    AdmissibleMap,
    SearchCounter,
    check_psp,
    compose,
    identity_map,
    iter_maps,
    same_complex,
    search_order,
)
from dtopo.core.paths import ClassTable, Edges, Pair, default_table, equivalent, make_path
from dtopo.errors import (
    AdmissibilityError,
    BudgetExceeded,
    CertificateError,
    LoopError,
    ParameterError,
    PathError,
    WitnessError,
)
from dtopo.logging_config import get_logger
from dtopo.models import VerdictReport
from dtopo.settings import settings

logger = get_logger(__name__)

FUTURE = "future"
PAST = "past"
DIRECTIONS = (FUTURE, PAST)
ALPHAS = ("+", "-", "0")


class Verdict(str, Enum):
    TRUE = "true"
    FALSE = "false"
    NOT_FOUND = "not found within depth"
    INCONCLUSIVE = "inconclusive"


def _check_alpha(alpha: str) -> None:
    if alpha not in ALPHAS:
        raise ParameterError(f"alpha must be one of {', '.join(ALPHAS)}, got {alpha!r}")


@dataclass
class HomotopyWitness:
    """An elementary future or past homotopy from start to end."""
    direction: str
    start: AdmissibleMap
    end: AdmissibleMap
    w: Mapping[str, Edges]

    def path_ends(self, v: str) -> Pair:
        if self.direction == FUTURE:
            return self.start(v), self.end(v)
        return self.end(v), self.start(v)


@dataclass
class WitnessChain:
    """Maps linked by witnesses; witnesses[i] runs from maps[i] to maps[i + 1]."""
    maps: List[AdmissibleMap]
    witnesses: List[HomotopyWitness] = field(default_factory=list)
    psp: List[bool] = field(default_factory=list)

    @property
    def start(self) -> AdmissibleMap:
        return self.maps[0]

    @property
    def end(self) -> AdmissibleMap:
        return self.maps[-1]

    @property
    def directions(self) -> List[str]:
        return [H.direction for H in self.witnesses]

    def __len__(self) -> int:
        return len(self.witnesses)


def _naturality(H: HomotopyWitness, edge: str) -> Tuple[Pair, Edges, Edges]:
    X = H.start.source
    a, b = X.src(edge), X.tgt(edge)
    if H.direction == FUTURE:
        pair = (H.start(a), H.end(b))
        return pair, H.start.edge_images[edge] + tuple(H.w[b]), tuple(H.w[a]) + H.end.edge_images[edge]
    pair = (H.end(a), H.start(b))
    return pair, tuple(H.w[a]) + H.start.edge_images[edge], H.end.edge_images[edge] + tuple(H.w[b])


def _optional_table(Y: PrecubicalSet) -> Optional[ClassTable]:
    try:
        return default_table(Y)
    except LoopError:
        return None


def check_witness(H: HomotopyWitness, table: Optional[ClassTable] = None) -> bool:
    """
    Check endpoints and naturality of a witness.

    Returns:
        True iff every naturality square commutes up to swaps

    Raises:
        WitnessError: If a vertex has no path or a path has the wrong endpoints
        AdmissibilityError: If an endpoint map is not admissible
    """
    if H.direction not in DIRECTIONS:
        raise WitnessError(f"unknown witness direction {H.direction!r}")
    f, g = H.start, H.end
    if not (same_complex(f.source, g.source) and same_complex(f.target, g.target)):
        raise WitnessError(f"witness links {f.label} and {g.label}, which do not share source and target")
    for m in (f, g):
        if not m.is_admissible:
            raise AdmissibilityError(f"map {m.label} is not admissible")

    X, Y = f.source, f.target
    for v in X.vertices:
        if v not in H.w:
            raise WitnessError(f"no path given for vertex {v!r}", v)
        a, b = H.path_ends(v)
        try:
            path = make_path(Y, H.w[v], src=a)
        except PathError as e:
            raise WitnessError(f"vertex {v!r}: {e}", v)
        if path.tgt != b:
            raise WitnessError(f"vertex {v!r}: path ends at {path.tgt!r}, expected {b!r}", v)

    table = table or _optional_table(Y)
    for e in X.edges:
        pair, lhs, rhs = _naturality(H, e)
        if not equivalent(Y, lhs, rhs, pair, table):
            logger.debug(f"Witness {f.label}: naturality fails at edge {e!r}")
            return False
    return True


def find_witness(start: AdmissibleMap, end: AdmissibleMap, direction: str,
                 table: Optional[ClassTable] = None) -> Optional[HomotopyWitness]:
    """
    Search for a single witness by backtracking over one class per vertex.

    Classes are tried in id order, so the witness found is the least one.
    """
    if direction not in DIRECTIONS:
        raise ParameterError(f"direction must be future or past, got {direction!r}")
    X, Y = start.source, start.target
    table = table or default_table(Y)

    options: Dict[str, List[Edges]] = {}
    for v in X.vertices:
        a, b = (start(v), end(v)) if direction == FUTURE else (end(v), start(v))
        found = table.get(a, b)
        if not found:
            return None
        options[v] = [c.representative.edges for c in found]

    order = search_order(X)
    position = {v: k for k, v in enumerate(order)}
    checks: List[List[str]] = [[] for _ in order]
    for e in X.edges:
        checks[max(position[X.src(e)], position[X.tgt(e)])].append(e)

    chosen: Dict[str, Edges] = {}
    partial = HomotopyWitness(direction, start, end, chosen)

    def natural(e: str) -> bool:
        pair, lhs, rhs = _naturality(partial, e)
        return equivalent(Y, lhs, rhs, pair, table)

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        v = order[k]
        for path in options[v]:
            chosen[v] = path
            if all(natural(e) for e in checks[k]) and extend(k + 1):
                return True
            del chosen[v]
        return False

    if extend(0):
        return HomotopyWitness(direction, start, end, dict(chosen))
    return None


@dataclass
class InessentialCertificate:
    """Chain from the identity to map; every map on it is psp and keeps pinned vertices fixed."""
    map: AdmissibleMap
    alpha: str
    chain: WitnessChain


@dataclass
class RatherCertificate:
    """helper is inessential and map after helper is inessential."""
    map: AdmissibleMap
    alpha: str
    helper: AdmissibleMap
    helper_proof: InessentialCertificate
    composite_proof: InessentialCertificate


@dataclass
class DheCertificate:
    """inverse after map and map after inverse are both rather inessential."""
    map: AdmissibleMap
    alpha: str
    inverse: AdmissibleMap
    source_side: RatherCertificate
    target_side: RatherCertificate


Certificate = Union[InessentialCertificate, RatherCertificate, DheCertificate]


@dataclass
class CheckResult:
    """Verdict of a search; truthy only for a proved property."""
    check: str
    alpha: str
    verdict: Verdict
    exhaustive: bool = False
    detail: str = ""
    explored: Optional[int] = None
    certificate: Optional[Certificate] = None

    def __bool__(self) -> bool:
        return self.verdict is Verdict.TRUE

    def to_report(self, certificates: Sequence[str] = ()) -> VerdictReport:
        return VerdictReport(
            check=self.check,
            alpha=self.alpha,
            verdict=self.verdict.value,
            exhaustive=self.exhaustive,
            detail=self.detail,
            explored=self.explored,
            certificates=list(certificates),
        )


def _aggregate(check: str, alpha: str, outcomes: Iterable[CheckResult], detail: str) -> CheckResult:
    """Combine failed sub-searches: any budget overflow is inconclusive, any depth cut is not-found."""
    verdicts = {o.verdict for o in outcomes}
    if Verdict.INCONCLUSIVE in verdicts:
        explored = max((o.explored or 0) for o in outcomes if o.verdict is Verdict.INCONCLUSIVE)
        return CheckResult(check, alpha, Verdict.INCONCLUSIVE, detail=f"{detail}; budget exhausted", explored=explored)
    if Verdict.NOT_FOUND in verdicts:
        return CheckResult(check, alpha, Verdict.NOT_FOUND, detail=f"{detail}; depth limit reached")
    return CheckResult(check, alpha, Verdict.FALSE, exhaustive=True, detail=detail)


class HomotopyAnalyzer:
    """Search engine for witnesses, inessential maps and equivalences.

    Results are cached per map and flavour. The lock covers cache reads and
    writes only; searches run unlocked, so threads sharing one analyzer may
    both compute a missing entry and the first stored result is kept.
    """

    def __init__(self, depth: Optional[int] = None, budget: Optional[int] = None):
        self.depth = depth if depth is not None else settings.DEFAULT_DEPTH
        self.budget = budget if budget is not None else settings.DEFAULT_BUDGET
        if self.depth <= 0:
            raise ParameterError(f"depth must be positive, got {self.depth}")
        if self.budget <= 0:
            raise ParameterError(f"budget must be positive, got {self.budget}")
        self._lock = threading.Lock()
        self._psp: Dict[AdmissibleMap, bool] = {}
        self._witnesses: Dict[Tuple[AdmissibleMap, AdmissibleMap, str], Optional[HomotopyWitness]] = {}
        self._inessential: Dict[Tuple[AdmissibleMap, str], CheckResult] = {}
        self._rather: Dict[Tuple[AdmissibleMap, str], CheckResult] = {}
        self._fixed: Dict[Tuple[PrecubicalSet, str], List[str]] = {}

    # -- cached primitives -------------------------------------------------

    def _cached(self, cache: Dict, key, compute: Callable[[], object]):
        """Look up key, computing outside the lock on a miss; the first stored value wins."""
        with self._lock:
            if key in cache:
                return cache[key]
        value = compute()
        with self._lock:
            return cache.setdefault(key, value)

    def is_psp(self, f: AdmissibleMap) -> bool:
        return self._cached(self._psp, f, lambda: f.is_admissible and bool(check_psp(f)))

    def witness(self, start: AdmissibleMap, end: AdmissibleMap, direction: str) -> Optional[HomotopyWitness]:
        return self._cached(self._witnesses, (start, end, direction), lambda: find_witness(start, end, direction))

    def fixed_vertices(self, X: PrecubicalSet, alpha: str) -> List[str]:
        """Vertices every alpha-inessential endomap of X keeps in place."""
        def compute() -> List[str]:
            fixed = set(pinned_vertices(X))
            if alpha == "+":
                fixed.update(terminal_vertices(X))
            elif alpha == "-":
                fixed.update(initial_vertices(X))
            return sorted(fixed)

        return self._cached(self._fixed, (X, alpha), compute)

    # -- chains ------------------------------------------------------------

    def _neighbours(self, h: AdmissibleMap, restricted: bool, counter: SearchCounter,
                    seen: Mapping[AdmissibleMap, object]) -> Iterator[Tuple[AdmissibleMap, HomotopyWitness]]:
        """Unseen maps one elementary witness away from h, generated lazily."""
        X, Y = h.source, h.target
        pinned = pinned_vertices(X) if restricted else []
        for direction, cone in ((FUTURE, Y.reach.up), (PAST, Y.reach.down)):
            domains = {v: set(cone[h(v)]) for v in X.vertices}
            for p in pinned:
                domains[p] &= {p}
            for k in iter_maps(X, Y, domains=domains, counter=counter):
                if k in seen:
                    continue
                if restricted and not self.is_psp(k):
                    continue
                H = self.witness(h, k, direction)
                if H is not None:
                    yield k, H

    def _hop(self, h: AdmissibleMap, goal: AdmissibleMap) -> Optional[HomotopyWitness]:
        return self.witness(h, goal, FUTURE) or self.witness(h, goal, PAST)

    def _chain(self, parents: Mapping[AdmissibleMap, Optional[Tuple[AdmissibleMap, HomotopyWitness]]],
               goal: AdmissibleMap) -> WitnessChain:
        maps = [goal]
        witnesses: List[HomotopyWitness] = []
        node = goal
        while parents[node] is not None:
            previous, H = parents[node]
            maps.append(previous)
            witnesses.append(H)
            node = previous
        maps.reverse()
        witnesses.reverse()
        return WitnessChain(maps, witnesses, [self.is_psp(m) for m in maps])

    def _zigzag(self, start: AdmissibleMap, goal: AdmissibleMap, depth: int, restricted: bool,
                counter: SearchCounter) -> Tuple[Optional[WitnessChain], bool]:
        """Breadth-first search for a zig-zag; the flag is True when the reachable maps were exhausted."""
        parents: Dict[AdmissibleMap, Optional[Tuple[AdmissibleMap, HomotopyWitness]]] = {start: None}
        frontier = [start]
        for level in range(depth):
            for h in frontier:
                H = self._hop(h, goal)
                if H is not None:
                    parents[goal] = (h, H)
                    return self._chain(parents, goal), False
            if level == depth - 1:
                for h in frontier:
                    for _ in self._neighbours(h, restricted, counter, parents):
                        return None, False
                return None, True
            next_frontier: List[AdmissibleMap] = []
            for h in frontier:
                for k, H in self._neighbours(h, restricted, counter, parents):
                    parents[k] = (h, H)
                    next_frontier.append(k)
            logger.debug(f"Zig-zag level {level + 1}: {len(next_frontier)} new maps")
            if not next_frontier:
                return None, True
            frontier = next_frontier
        return None, False

    def _search_chain(self, f: AdmissibleMap, g: AdmissibleMap, alpha: str, depth: int, restricted: bool,
                      counter: SearchCounter) -> Tuple[Optional[WitnessChain], bool]:
        if f == g:
            return WitnessChain([f], [], [self.is_psp(f)]), True
        if alpha in ("+", "-"):
            H = self.witness(f, g, FUTURE if alpha == "+" else PAST)
            if H is None:
                return None, True
            return WitnessChain([f, g], [H], [self.is_psp(f), self.is_psp(g)]), True
        return self._zigzag(f, g, depth, restricted, counter)

    def find_witness_chain(self, f: AdmissibleMap, g: AdmissibleMap, alpha: str,
                           depth: Optional[int] = None) -> Optional[WitnessChain]:
        """
        Find a chain of flavour alpha from f to g.

        Raises:
            ParameterError: If depth is not positive or the maps are not parallel
            BudgetExceeded: If the zig-zag search runs out of budget
        """
        _check_alpha(alpha)
        depth = self.depth if depth is None else depth
        if depth <= 0:
            raise ParameterError(f"depth must be positive, got {depth}")
        if not (same_complex(f.source, g.source) and same_complex(f.target, g.target)):
            raise ParameterError(f"maps {f.label} and {g.label} are not parallel")
        for m in (f, g):
            if not m.is_admissible:
                raise AdmissibilityError(f"map {m.label} is not admissible")
        chain, _ = self._search_chain(f, g, alpha, depth, False, SearchCounter(self.budget))
        return chain

    # -- verdicts ----------------------------------------------------------

    def _require_endomap(self, f: AdmissibleMap) -> None:
        if not f.is_endomap:
            raise ParameterError(f"{f.label} is not an endomap")
        if not f.is_admissible:
            raise AdmissibilityError(f"map {f.label} is not admissible")

    def check_inessential(self, f: AdmissibleMap, alpha: str) -> CheckResult:
        """Decide whether a psp chain of flavour alpha links the identity to f."""
        _check_alpha(alpha)
        return self._cached(self._inessential, (f, alpha), lambda: self._inessential_uncached(f, alpha))

    def _inessential_uncached(self, f: AdmissibleMap, alpha: str) -> CheckResult:
        self._require_endomap(f)
        X = f.source
        ident = identity_map(X)
        if f == ident:
            chain = WitnessChain([ident], [], [True])
            return CheckResult("inessential", alpha, Verdict.TRUE, detail="identity",
                               certificate=InessentialCertificate(f, alpha, chain))
        if not self.is_psp(f):
            return CheckResult("inessential", alpha, Verdict.FALSE, exhaustive=True, detail="map is not psp")
        moved = [p for p in self.fixed_vertices(X, alpha) if f(p) != p]
        if moved:
            return CheckResult("inessential", alpha, Verdict.FALSE, exhaustive=True,
                               detail=f"map moves fixed vertex {moved[0]!r}")
        counter = SearchCounter(self.budget)
        try:
            chain, exhaustive = self._search_chain(ident, f, alpha, self.depth, True, counter)
        except BudgetExceeded as e:
            logger.warning(f"Inessential search for {f!r} ({alpha}) ran out of budget")
            return CheckResult("inessential", alpha, Verdict.INCONCLUSIVE, detail="budget exhausted",
                               explored=e.explored)
        if chain is not None:
            return CheckResult("inessential", alpha, Verdict.TRUE, detail=f"chain of length {len(chain)}",
                               certificate=InessentialCertificate(f, alpha, chain))
        if exhaustive:
            return CheckResult("inessential", alpha, Verdict.FALSE, exhaustive=True,
                               detail="no chain from the identity")
        return CheckResult("inessential", alpha, Verdict.NOT_FOUND, detail=f"no chain within depth {self.depth}")

    def check_rather_inessential(self, f: AdmissibleMap, alpha: str,
                                 pool: Optional[Iterable[AdmissibleMap]] = None) -> CheckResult:
        """
        Decide whether f after some inessential g is inessential.

        Args:
            f: Admissible endomap
            alpha: Flavour
            pool: Candidate helpers; all endomaps keeping the fixed vertices when omitted

        Raises:
            ParameterError: If an explicit pool is empty
        """
        _check_alpha(alpha)
        if pool is not None:
            pool = list(pool)
            if not pool:
                raise ParameterError("candidate pool is empty")
            return self._rather_uncached(f, alpha, pool)
        return self._cached(self._rather, (f, alpha), lambda: self._rather_uncached(f, alpha, None))

    def _rather_uncached(self, f: AdmissibleMap, alpha: str,
                         pool: Optional[List[AdmissibleMap]]) -> CheckResult:
        self._require_endomap(f)
        X = f.source
        fixed = self.fixed_vertices(X, alpha)
        moved = [p for p in fixed if f(p) != p]
        if moved:
            return CheckResult("rather", alpha, Verdict.FALSE, exhaustive=True,
                               detail=f"map moves fixed vertex {moved[0]!r}")

        ident = identity_map(X)
        counter = SearchCounter(self.budget)

        def candidates() -> Iterator[AdmissibleMap]:
            if pool is None or ident in pool:
                yield ident
            if pool is None:
                source = iter_maps(X, X, domains={p: {p} for p in fixed}, counter=counter)
            else:
                source = iter(pool)
            for g in source:
                if g != ident:
                    yield g

        outcomes: List[CheckResult] = []
        try:
            for g in candidates():
                helper = self.check_inessential(g, alpha)
                if not helper:
                    outcomes.append(helper)
                    continue
                composite = self.check_inessential(compose(f, g), alpha)
                if composite:
                    certificate = RatherCertificate(f, alpha, g, helper.certificate, composite.certificate)
                    return CheckResult("rather", alpha, Verdict.TRUE, detail=f"helper {g!r}",
                                       certificate=certificate)
                outcomes.append(composite)
        except BudgetExceeded as e:
            return CheckResult("rather", alpha, Verdict.INCONCLUSIVE, detail="budget exhausted",
                               explored=e.explored)
        return _aggregate("rather", alpha, outcomes, "no helper makes the composite inessential")

    def _inverse_domains(self, f: AdmissibleMap, alpha: str) -> Tuple[Optional[Dict[str, Set[str]]], str]:
        """Restrictions on g: g(f(p)) = p for fixed p of X, g(q) in f^-1(q) for fixed q of Y."""
        X, Y = f.source, f.target
        domains: Dict[str, Set[str]] = {}

        def restrict(v: str, allowed: Set[str]) -> None:
            domains[v] = domains.get(v, set(X.vertices)) & allowed

        for p in self.fixed_vertices(X, alpha):
            restrict(f(p), {p})
        for q in self.fixed_vertices(Y, alpha):
            pre = set(f.preimage(q))
            if not pre:
                return None, f"fixed vertex {q!r} of {Y.name!r} has no preimage"
            restrict(q, pre)
        for v, allowed in domains.items():
            if not allowed:
                return None, f"no admissible image for {v!r}"
        return domains, ""

    def check_dhe(self, f: AdmissibleMap, alpha: str) -> CheckResult:
        """
        Search for g making g after f and f after g rather inessential.

        Raises:
            AdmissibilityError: If f is not admissible
        """
        _check_alpha(alpha)
        if not f.is_admissible:
            raise AdmissibilityError(f"map {f.label} is not admissible")
        X, Y = f.source, f.target
        domains, reason = self._inverse_domains(f, alpha)
        if domains is None:
            return CheckResult("dhe", alpha, Verdict.FALSE, exhaustive=True, detail=reason)

        counter = SearchCounter(self.budget)
        try:
            inverses = list(iter_maps(Y, X, domains=domains, counter=counter))
        except BudgetExceeded as e:
            return CheckResult("dhe", alpha, Verdict.INCONCLUSIVE, detail="budget exhausted enumerating inverses",
                               explored=e.explored)
        if f.is_endomap:
            ident = identity_map(X)
            if ident in inverses:
                inverses.remove(ident)
                inverses.insert(0, ident)
        logger.info(f"dhe({alpha}) {f.label}: {len(inverses)} candidate inverses")

        outcomes: List[CheckResult] = []
        for g in inverses:
            source_side = self.check_inessential(compose(g, f), alpha)
            if not source_side:
                continue
            target_side = self.check_inessential(compose(f, g), alpha)
            if target_side:
                return self._dhe_found(f, g, alpha,
                                       self._as_rather(source_side.certificate, X, alpha),
                                       self._as_rather(target_side.certificate, Y, alpha))

        for g in inverses:
            source_side = self.check_rather_inessential(compose(g, f), alpha)
            if not source_side:
                outcomes.append(source_side)
                continue
            target_side = self.check_rather_inessential(compose(f, g), alpha)
            if target_side:
                return self._dhe_found(f, g, alpha, source_side.certificate, target_side.certificate)
            outcomes.append(target_side)
        if not inverses:
            return CheckResult("dhe", alpha, Verdict.FALSE, exhaustive=True, detail="no candidate inverse")
        return _aggregate("dhe", alpha, outcomes, f"none of {len(inverses)} candidate inverses works")

    def _as_rather(self, proof: InessentialCertificate, Z: PrecubicalSet, alpha: str) -> RatherCertificate:
        ident = identity_map(Z)
        trivial = InessentialCertificate(ident, alpha, WitnessChain([ident], [], [True]))
        return RatherCertificate(proof.map, alpha, ident, trivial, proof)

    def _dhe_found(self, f: AdmissibleMap, g: AdmissibleMap, alpha: str,
                   source_side: RatherCertificate, target_side: RatherCertificate) -> CheckResult:
        logger.info(f"dhe({alpha}) {f.label}: inverse {g!r}")
        return CheckResult("dhe", alpha, Verdict.TRUE, detail=f"inverse {g!r}",
                           certificate=DheCertificate(f, alpha, g, source_side, target_side))

    def dhe_equivalent(self, X: PrecubicalSet, Y: PrecubicalSet, alpha: str) -> CheckResult:
        """Search every admissible f: X -> Y for a directed homotopy equivalence."""
        _check_alpha(alpha)
        counter = SearchCounter(self.budget)
        outcomes: List[CheckResult] = []
        try:
            for f in iter_maps(X, Y, counter=counter):
                result = self.check_dhe(f, alpha)
                if result:
                    return result
                outcomes.append(result)
        except BudgetExceeded as e:
            return CheckResult("dhe", alpha, Verdict.INCONCLUSIVE, detail="budget exhausted enumerating maps",
                               explored=e.explored)
        if not outcomes:
            return CheckResult("dhe", alpha, Verdict.FALSE, exhaustive=True,
                               detail=f"no admissible map {X.name}->{Y.name}")
        return _aggregate("dhe", alpha, outcomes, f"none of {len(outcomes)} maps is an equivalence")

    # -- certificates ------------------------------------------------------

    def validate_certificate(self, certificate: Certificate) -> bool:
        """
        Re-check a certificate from scratch.

        Raises:
            CertificateError: If any part of the certificate does not hold
        """
        if isinstance(certificate, InessentialCertificate):
            self._validate_inessential(certificate)
        elif isinstance(certificate, RatherCertificate):
            self._validate_rather(certificate)
        elif isinstance(certificate, DheCertificate):
            if certificate.source_side.map != compose(certificate.inverse, certificate.map):
                raise CertificateError("source side does not prove the composite inverse after map")
            if certificate.target_side.map != compose(certificate.map, certificate.inverse):
                raise CertificateError("target side does not prove the composite map after inverse")
            self._validate_rather(certificate.source_side)
            self._validate_rather(certificate.target_side)
        else:
            raise CertificateError(f"not a certificate: {certificate!r}")
        return True

    def _validate_rather(self, certificate: RatherCertificate) -> None:
        if certificate.helper_proof.map != certificate.helper:
            raise CertificateError("helper proof is about a different map")
        if certificate.composite_proof.map != compose(certificate.map, certificate.helper):
            raise CertificateError("composite proof is about a different map")
        self._validate_inessential(certificate.helper_proof)
        self._validate_inessential(certificate.composite_proof)

    def _validate_inessential(self, certificate: InessentialCertificate) -> None:
        chain, f, alpha = certificate.chain, certificate.map, certificate.alpha
        _check_alpha(alpha)
        if len(chain.maps) != len(chain.witnesses) + 1:
            raise CertificateError("chain has mismatched maps and witnesses")
        if chain.start != identity_map(f.source) or chain.end != f:
            raise CertificateError(f"chain does not run from the identity to {f!r}")
        expected = {"+": FUTURE, "-": PAST}.get(alpha)
        if expected and (len(chain) > 1 or any(d != expected for d in chain.directions)):
            raise CertificateError(f"an {alpha}-inessential chain is a single {expected} witness")
        pinned = pinned_vertices(f.source)
        for m in chain.maps:
            if not self.is_psp(m):
                raise CertificateError(f"chain map {m!r} is not psp")
            if any(m(p) != p for p in pinned):
                raise CertificateError(f"chain map {m!r} moves a pinned vertex")
        for i, H in enumerate(chain.witnesses):
            if H.start != chain.maps[i] or H.end != chain.maps[i + 1]:
                raise CertificateError(f"witness {i} does not link its neighbouring maps")
            try:
                natural = check_witness(H)
            except (WitnessError, AdmissibilityError) as e:
                raise CertificateError(f"witness {i}: {e}")
            if not natural:
                raise CertificateError(f"witness {i} is not natural")


def _analyzer(analyzer: Optional[HomotopyAnalyzer], depth: Optional[int] = None,
              budget: Optional[int] = None) -> HomotopyAnalyzer:
    return analyzer if analyzer is not None else HomotopyAnalyzer(depth=depth, budget=budget)


def find_witness_chain(f: AdmissibleMap, g: AdmissibleMap, alpha: str, depth: Optional[int] = None,
                       analyzer: Optional[HomotopyAnalyzer] = None) -> Optional[WitnessChain]:
    if depth is not None and depth <= 0:
        raise ParameterError(f"depth must be positive, got {depth}")
    return _analyzer(analyzer).find_witness_chain(f, g, alpha, depth)


def check_inessential(f: AdmissibleMap, alpha: str, depth: Optional[int] = None,
                      analyzer: Optional[HomotopyAnalyzer] = None) -> CheckResult:
    return _analyzer(analyzer, depth=depth).check_inessential(f, alpha)


def check_rather_inessential(f: AdmissibleMap, alpha: str, pool: Optional[Iterable[AdmissibleMap]] = None,
                             analyzer: Optional[HomotopyAnalyzer] = None) -> CheckResult:
    return _analyzer(analyzer).check_rather_inessential(f, alpha, pool)


def check_dhe(f: AdmissibleMap, alpha: str, budget: Optional[int] = None,
              analyzer: Optional[HomotopyAnalyzer] = None) -> CheckResult:
    return _analyzer(analyzer, budget=budget).check_dhe(f, alpha)


def dhe_equivalent(X: PrecubicalSet, Y: PrecubicalSet, alpha: str,
                   analyzer: Optional[HomotopyAnalyzer] = None) -> CheckResult:
    return _analyzer(analyzer).dhe_equivalent(X, Y, alpha)


def validate_certificate(certificate: Certificate, analyzer: Optional[HomotopyAnalyzer] = None) -> bool:
    return _analyzer(analyzer).validate_certificate(certificate)
