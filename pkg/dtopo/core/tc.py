"""
Discrete directed topological complexity.

A patch is a set of reachable pairs with one chosen class per pair such that
extending a chosen path by one edge inside the patch lands on the chosen
class of the extended pair. directed_tc is the least number of disjoint
patches covering all reachable pairs.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from dtopo.core.complex import PrecubicalSet
from dtopo.core.homotopy import DheCertificate, HomotopyAnalyzer, validate_certificate
from dtopo.core.maps import SearchCounter, same_complex
from dtopo.core.paths import ClassTable, Pair, class_table
from dtopo.errors import BoundedModeError, CertificateError, CoverError, ParameterError
from dtopo.logging_config import get_logger
from dtopo.models import CoverReport, PairAssignment, PatchEntry
from dtopo.settings import settings

logger = get_logger(__name__)

Constraint = Tuple[Pair, Pair, Dict[int, int]]


@dataclass
class Patch:
    label: int
    assignment: Dict[Pair, int] = field(default_factory=dict)

    @property
    def pairs(self) -> List[Pair]:
        return sorted(self.assignment)


@dataclass
class SectionCover:
    complex: PrecubicalSet
    patches: List[Patch]

    @property
    def k(self) -> int:
        return len(self.patches)

    def is_valid(self, table: Optional[ClassTable] = None) -> bool:
        """Disjoint, covering, and every patch consistent."""
        table = _exhaustive_table(self.complex, table)
        seen: Set[Pair] = set()
        for patch in self.patches:
            if seen & set(patch.assignment):
                return False
            seen |= set(patch.assignment)
            if not patch_consistent(self.complex, patch, table):
                return False
        return seen == set(table.pairs)

    def to_report(self) -> CoverReport:
        return CoverReport(
            complex=self.complex.name,
            dtc=self.k,
            patches=[
                PatchEntry(label=p.label, pairs=[
                    PairAssignment(src=x, tgt=y, class_id=p.assignment[(x, y)]) for x, y in p.pairs
                ])
                for p in self.patches
            ],
        )


def _exhaustive_table(X: PrecubicalSet, table: Optional[ClassTable]) -> ClassTable:
    table = table or class_table(X)
    if not table.exhaustive:
        raise BoundedModeError(f"section covers of {X.name!r} need an exhaustive class table")
    return table


def extension_constraints(X: PrecubicalSet, table: ClassTable) -> List[Constraint]:
    """(P, Q, m): inside one patch, choosing class c at P forces class m[c] at Q."""
    constraints: List[Constraint] = []
    reach = X.reach
    for e in X.edges:
        a, b = X.src(e), X.tgt(e)
        for x in sorted(reach.down[a]):
            source, target = (x, a), (x, b)
            constraints.append((source, target, {
                c.class_id: table.class_id_of(target, c.representative.edges + (e,)) for c in table.get(*source)
            }))
        for y in sorted(reach.up[b]):
            source, target = (b, y), (a, y)
            constraints.append((source, target, {
                c.class_id: table.class_id_of(target, (e,) + c.representative.edges) for c in table.get(*source)
            }))
    return constraints


def patch_consistent(X: PrecubicalSet, patch: Patch, table: Optional[ClassTable] = None) -> bool:
    """
    Check every single-edge extension constraint inside the patch.

    Raises:
        ParameterError: If a pair is unreachable or its class id does not exist
    """
    table = _exhaustive_table(X, table)
    for pair, class_id in patch.assignment.items():
        if not 0 <= class_id < table.count(*pair):
            raise ParameterError(f"class {class_id} does not belong to pair {pair}")
    for source, target, forced in extension_constraints(X, table):
        if source in patch.assignment and target in patch.assignment:
            if forced[patch.assignment[source]] != patch.assignment[target]:
                return False
    return True


class _CoverSearch:
    """Backtracking over (patch label, class) per pair with forward checking."""

    def __init__(self, X: PrecubicalSet, table: ClassTable, budget: int):
        self.X = X
        self.table = table
        self.pairs = table.pairs
        index = {p: i for i, p in enumerate(self.pairs)}
        self.counts = [table.count(*p) for p in self.pairs]
        self.allowed: Dict[Tuple[int, int], Set[Tuple[int, int]]] = {}
        for source, target, forced in extension_constraints(X, table):
            i, j = index[source], index[target]
            if i == j:
                continue
            ok = {(ci, cj) for ci in range(self.counts[i]) for cj in range(self.counts[j]) if forced[ci] == cj}
            self._restrict(i, j, ok)
            self._restrict(j, i, {(cj, ci) for ci, cj in ok})
        self.neighbours: List[List[int]] = [[] for _ in self.pairs]
        for i, j in sorted(self.allowed):
            self.neighbours[i].append(j)
        self.order = sorted(range(len(self.pairs)), key=lambda i: (-len(self.neighbours[i]), self.pairs[i]))
        self.counter = SearchCounter(budget)

    def _restrict(self, i: int, j: int, ok: Set[Tuple[int, int]]) -> None:
        if (i, j) in self.allowed:
            self.allowed[(i, j)] &= ok
        else:
            self.allowed[(i, j)] = set(ok)

    def _single_patch_domains(self) -> Optional[List[Set[int]]]:
        """Arc consistency with every constraint active; None when some pair loses all classes."""
        domains = [set(range(n)) for n in self.counts]
        queue = deque(self.allowed)
        while queue:
            i, j = queue.popleft()
            ok = self.allowed[(i, j)]
            keep = {ci for ci in domains[i] if any((ci, cj) in ok for cj in domains[j])}
            if keep != domains[i]:
                domains[i] = keep
                if not keep:
                    return None
                queue.extend((h, i) for h in self.neighbours[i] if h != j)
        return domains

    def solve(self, k: int) -> Optional[Dict[int, Tuple[int, int]]]:
        if k == 1:
            classes = self._single_patch_domains()
            if classes is None:
                return None
            domains = [{(0, c) for c in d} for d in classes]
        else:
            domains = [{(label, c) for label in range(k) for c in range(n)} for n in self.counts]
        assigned: Dict[int, Tuple[int, int]] = {}

        def extend(position: int, top_label: int) -> bool:
            if position == len(self.order):
                return True
            i = self.order[position]
            for label, c in sorted(domains[i]):
                if label > top_label + 1:
                    continue
                self.counter.tick()
                pruned: List[Tuple[int, Tuple[int, int]]] = []
                ok = True
                for j in self.neighbours[i]:
                    if j in assigned:
                        continue
                    allowed = self.allowed[(i, j)]
                    for value in [v for v in domains[j] if v[0] == label and (c, v[1]) not in allowed]:
                        domains[j].discard(value)
                        pruned.append((j, value))
                    if not domains[j]:
                        ok = False
                        break
                if ok:
                    assigned[i] = (label, c)
                    if extend(position + 1, max(top_label, label)):
                        return True
                    del assigned[i]
                for j, value in pruned:
                    domains[j].add(value)
            return False

        return dict(assigned) if extend(0, -1) else None


def directed_tc(X: PrecubicalSet, max_k: Optional[int] = None, table: Optional[ClassTable] = None,
                budget: Optional[int] = None) -> SectionCover:
    """
    Least number of disjoint consistent patches covering all reachable pairs.

    Args:
        X: Loop-free valid complex
        max_k: Largest patch count tried
        table: Exhaustive class table of X
        budget: Search node budget

    Returns:
        The lexicographically least witness cover for the least k

    Raises:
        CoverError: If no cover with at most max_k patches exists
        BoundedModeError: If only a bounded class table is available
    """
    max_k = max_k if max_k is not None else settings.DEFAULT_MAX_K
    if max_k < 1:
        raise ParameterError(f"max_k must be at least 1, got {max_k}")
    table = _exhaustive_table(X, table)
    search = _CoverSearch(X, table, budget if budget is not None else settings.DEFAULT_BUDGET)
    for k in range(1, max_k + 1):
        assigned = search.solve(k)
        if assigned is None:
            logger.debug(f"{X.name!r}: no cover with {k} patch(es)")
            continue
        patches: Dict[int, Patch] = {}
        for i, (label, c) in assigned.items():
            patches.setdefault(label, Patch(label)).assignment[search.pairs[i]] = c
        for patch in patches.values():
            patch.assignment = dict(sorted(patch.assignment.items()))
        cover = SectionCover(X, [patches[label] for label in sorted(patches)])
        logger.info(f"{X.name!r}: dtc={cover.k}")
        return cover
    raise CoverError(max_k)


def invariance_check(X: PrecubicalSet, Y: PrecubicalSet, certificate: Optional[DheCertificate],
                     max_k: Optional[int] = None, analyzer: Optional[HomotopyAnalyzer] = None) -> bool:
    """
    Compare directed_tc of two complexes linked by a certified equivalence.

    Raises:
        CertificateError: If the certificate is missing, invalid or about other complexes
    """
    if not isinstance(certificate, DheCertificate):
        raise CertificateError(f"no equivalence certificate between {X.name!r} and {Y.name!r}")
    f = certificate.map
    if not (same_complex(f.source, X) and same_complex(f.target, Y)):
        raise CertificateError(f"certificate is about {f.label}, not {X.name}->{Y.name}")
    validate_certificate(certificate, analyzer)
    return directed_tc(X, max_k).k == directed_tc(Y, max_k).k
