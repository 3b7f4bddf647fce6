"""
Pair component categories.

Reachable pairs are identified along inessential extension edges and along
certified inessential endomaps; the connected components are the objects of
the localized category. Each component carries a signature, the sorted
distinct class counts of its member pairs.
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Set, Tuple

from dtopo.core.complex import PrecubicalSet
from dtopo.core.homotopy import (
    DheCertificate,
    HomotopyAnalyzer,
    InessentialCertificate,
    validate_certificate,
)
from dtopo.core.maps import AdmissibleMap, same_complex
from dtopo.core.paths import ClassTable, Pair, class_table
from dtopo.core.utils import group_by_union
from dtopo.errors import BoundedModeError, CertificateError
from dtopo.logging_config import get_logger
from dtopo.models import ComponentEntry, ComponentReport
from dtopo.settings import settings

logger = get_logger(__name__)


@dataclass(frozen=True)
class EdgeVerdict:
    edge: str
    target_inessential: bool
    source_inessential: bool

    @property
    def inessential(self) -> bool:
        return self.target_inessential and self.source_inessential


def _bijective(table: ClassTable, source: Pair, target: Pair, extend) -> bool:
    found = table.get(*source)
    if len(found) != table.count(*target):
        return False
    images = {table.class_id_of(target, extend(c.representative.edges)) for c in found}
    return None not in images and len(images) == len(found)


def _exhaustive_table(X: PrecubicalSet, table: Optional[ClassTable]) -> ClassTable:
    table = table or class_table(X)
    if not table.exhaustive:
        raise BoundedModeError(f"component analysis of {X.name!r} needs an exhaustive class table")
    return table


def classify_edges(X: PrecubicalSet, table: Optional[ClassTable] = None,
                   workers: Optional[int] = None) -> List[EdgeVerdict]:
    """
    Decide for every edge whether extending by it is a bijection on classes.

    An edge a -> b is target inessential when post-composition is a bijection
    classes(x, a) -> classes(x, b) for all x below a, and source inessential
    when pre-composition is a bijection classes(b, y) -> classes(a, y) for all
    y above b.

    Raises:
        BoundedModeError: If only a bounded class table is available
    """
    table = _exhaustive_table(X, table)
    reach = X.reach

    def verdict(e: str) -> EdgeVerdict:
        a, b = X.src(e), X.tgt(e)
        target_ok = all(
            _bijective(table, (x, a), (x, b), lambda p: p + (e,))
            for x in sorted(reach.down[a])
        )
        source_ok = all(
            _bijective(table, (b, y), (a, y), lambda p: (e,) + p)
            for y in sorted(reach.up[b])
        )
        return EdgeVerdict(e, target_ok, source_ok)

    workers = workers or settings.WORKERS
    if workers > 1 and len(X.edges) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(verdict, X.edges))
    else:
        verdicts = [verdict(e) for e in X.edges]
    logger.info(f"{X.name!r}: {sum(v.inessential for v in verdicts)} of {len(verdicts)} edges inessential")
    return verdicts


@dataclass
class PairComponent:
    label: int
    pairs: List[Pair]
    signature: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.pairs)


@dataclass
class PairComponentCategory:
    """Object partition of the localized extension category of X."""
    complex: PrecubicalSet
    components: List[PairComponent]
    verdicts: List[EdgeVerdict]
    merges: List[str] = field(default_factory=list)
    component_of: Dict[Pair, int] = field(default_factory=dict)

    @property
    def objects(self) -> int:
        return len(self.components)

    @property
    def signatures(self) -> List[Tuple[int, ...]]:
        return sorted(c.signature for c in self.components)

    def to_report(self) -> ComponentReport:
        return ComponentReport(
            complex=self.complex.name,
            objects=self.objects,
            components=[
                ComponentEntry(label=c.label, size=c.size, signature=list(c.signature),
                               pairs=[list(p) for p in c.pairs])
                for c in self.components
            ],
            merges=list(self.merges),
        )


def pair_components(X: PrecubicalSet, extra_endomaps: Sequence[InessentialCertificate] = (),
                    table: Optional[ClassTable] = None,
                    analyzer: Optional[HomotopyAnalyzer] = None) -> PairComponentCategory:
    """
    Partition the reachable pairs of X.

    Args:
        X: Loop-free valid complex
        extra_endomaps: Inessentiality certificates of endomaps to identify along
        table: Exhaustive class table of X
        analyzer: Analyzer used to re-validate the certificates

    Raises:
        CertificateError: If an endomap comes without a valid certificate
        BoundedModeError: If only a bounded class table is available
    """
    table = _exhaustive_table(X, table)
    verdicts = classify_edges(X, table)
    reach = X.reach
    links: List[Tuple[Pair, Pair]] = []
    for v in verdicts:
        if not v.inessential:
            continue
        a, b = X.src(v.edge), X.tgt(v.edge)
        links += [((x, a), (x, b)) for x in sorted(reach.down[a])]
        links += [((a, y), (b, y)) for y in sorted(reach.up[b])]

    merges: List[str] = []
    for certificate in extra_endomaps:
        if not isinstance(certificate, InessentialCertificate):
            raise CertificateError(f"endomap merges need an inessentiality certificate, got {certificate!r}")
        f = certificate.map
        if not (same_complex(f.source, X) and f.is_endomap):
            raise CertificateError(f"certificate is about {f.label}, not an endomap of {X.name!r}")
        validate_certificate(certificate, analyzer)
        links += [((x, y), (f(x), f(y))) for x, y in reach.pairs]
        merges.append(repr(f))

    blocks = group_by_union(reach.pairs, links)
    components = [
        PairComponent(label, block, tuple(sorted({table.count(*p) for p in block})))
        for label, block in enumerate(blocks)
    ]
    component_of = {p: c.label for c in components for p in c.pairs}
    logger.info(f"{X.name!r}: {len(components)} pair components")
    return PairComponentCategory(X, components, verdicts, merges, component_of)


class Comparison(str, Enum):
    COMPATIBLE = "compatible"
    DISTINGUISHED = "distinguished"


def compare_categories(first: PairComponentCategory, second: PairComponentCategory) -> Comparison:
    """Distinguished when object counts or signature multisets differ; compatible is no proof of isomorphism."""
    if first.objects != second.objects:
        return Comparison.DISTINGUISHED
    if Counter(first.signatures) != Counter(second.signatures):
        return Comparison.DISTINGUISHED
    return Comparison.COMPATIBLE


@dataclass
class ComponentMap:
    mapping: Dict[int, int]
    bijective: bool


def induced_component_map(certificate: DheCertificate, source: Optional[PairComponentCategory] = None,
                          target: Optional[PairComponentCategory] = None,
                          analyzer: Optional[HomotopyAnalyzer] = None) -> ComponentMap:
    """
    Map component(x, y) to component(f x, f y) for a certified equivalence f.

    Raises:
        CertificateError: If the certificate is missing or does not re-validate
    """
    if not isinstance(certificate, DheCertificate):
        raise CertificateError("induced component maps need a directed homotopy equivalence certificate")
    validate_certificate(certificate, analyzer)
    f: AdmissibleMap = certificate.map
    source = source or pair_components(f.source)
    target = target or pair_components(f.target)
    mapping: Dict[int, int] = {}
    for pair, label in source.component_of.items():
        image = target.component_of[(f(pair[0]), f(pair[1]))]
        if mapping.setdefault(label, image) != image:
            logger.warning(f"Component {label} of {f.source.name!r} splits under {f.label}")
            return ComponentMap(mapping, False)
    bijective = len(mapping) == source.objects and len(set(mapping.values())) == target.objects
    return ComponentMap(dict(sorted(mapping.items())), bijective)


def _signature_label(signature: Tuple[int, ...]) -> str:
    return ",".join(str(n) for n in signature)


def to_dot(category: PairComponentCategory) -> str:
    """DOT graph: one node per component, edges for essential extensions between components."""
    X = category.complex
    reach = X.reach
    arrows: Set[Tuple[int, int]] = set()
    for v in category.verdicts:
        if v.inessential:
            continue
        a, b = X.src(v.edge), X.tgt(v.edge)
        for x in reach.down[a]:
            arrows.add((category.component_of[(x, a)], category.component_of[(x, b)]))
        for y in reach.up[b]:
            arrows.add((category.component_of[(b, y)], category.component_of[(a, y)]))
    lines = [f'digraph "{X.name}" {{']
    for c in category.components:
        lines.append(f'  c{c.label} [label="{c.size}×{_signature_label(c.signature)}"];')
    for src, tgt in sorted(arrows):
        if src != tgt:
            lines.append(f"  c{src} -> c{tgt};")
    lines.append("}")
    return "\n".join(lines) + "\n"
