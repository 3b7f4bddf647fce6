"""
Text rendering of report models.

Structured output is the pydantic JSON of the same models; these helpers
produce the line-oriented text form. Both are deterministic.
"""

from typing import Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from dtopo.core.paths import ClassTable, DihoClass
from dtopo.core.utils import format_pair, format_path
from dtopo.models import (
    ClassReport,
    ComponentReport,
    CoverReport,
    PairClasses,
    ValidationReport,
    VerdictReport,
)


def pair_classes(src: str, tgt: str, found: Sequence[DihoClass]) -> PairClasses:
    return PairClasses(
        src=src,
        tgt=tgt,
        count=len(found),
        representatives=[list(c.representative.edges) for c in found],
    )


def class_report(table: ClassTable, pairs: Optional[Iterable[Tuple[str, str]]] = None) -> ClassReport:
    """Class report for the given pairs, or for every reachable pair of the table."""
    pairs = table.pairs if pairs is None else pairs
    return ClassReport(
        complex=table.complex.name,
        mode=table.mode,
        max_len=table.max_len,
        lower_bound=table.lower_bound,
        pairs=[pair_classes(x, y, table.get(x, y)) for x, y in pairs],
    )


def render_pair(entry: PairClasses) -> str:
    reps = " | ".join(format_path(r) for r in entry.representatives)
    return f"{entry.src} {entry.tgt} {entry.count} [{reps}]"


def render_classes(report: ClassReport) -> str:
    lines = [render_pair(p) for p in report.pairs]
    if report.lower_bound:
        lines.append(f"# counts are lower bounds (max_len={report.max_len})")
    return "\n".join(lines)


def render_validation(report: ValidationReport) -> str:
    if report.passed:
        return f"valid: {report.name}"
    lines = [f"invalid: {report.name}: {len(report.violations)} violation(s)"]
    for v in report.violations:
        where = " ".join(
            f"{key}={value}" for key, value in (("i", v.i), ("j", v.j), ("alpha", v.alpha), ("beta", v.beta))
            if value is not None
        )
        lines.append(f"  {v.cell} {v.kind}{' ' + where if where else ''}: {v.detail}")
    return "\n".join(lines)


def render_verdict(report: VerdictReport) -> str:
    head = f"{report.check}({report.alpha})" if report.alpha else report.check
    line = f"{head}: {report.verdict}"
    if report.verdict == "false" and report.exhaustive:
        line += " (exhaustive)"
    if report.verdict == "inconclusive" and report.explored is not None:
        line += f" (budget exhausted after {report.explored} nodes)"
    lines = [line]
    if report.detail:
        lines.append(f"  {report.detail}")
    lines += [f"  certificate: {path}" for path in report.certificates]
    return "\n".join(lines)


def render_components(report: ComponentReport) -> str:
    lines = [f"objects: {report.objects}"]
    for c in report.components:
        signature = ",".join(str(n) for n in c.signature)
        members = " ".join(format_pair(pair) for pair in c.pairs)
        lines.append(f"  c{c.label} {c.size}×{signature}: {members}")
    lines += [f"  merged along {m}" for m in report.merges]
    return "\n".join(lines)


def render_cover(report: CoverReport) -> str:
    lines: List[str] = [f"dtc={report.dtc}"]
    for patch in report.patches:
        members = " ".join(f"({p.src},{p.tgt}):{p.class_id}" for p in patch.pairs)
        lines.append(f"  patch {patch.label}: {members}")
    return "\n".join(lines)


def render(report: BaseModel, output_format: str = "text") -> str:
    """Render any report model in the requested format."""
    if output_format == "structured":
        return report.model_dump_json(indent=2)
    renderers = {
        ClassReport: render_classes,
        ValidationReport: render_validation,
        VerdictReport: render_verdict,
        ComponentReport: render_components,
        CoverReport: render_cover,
    }
    return renderers[type(report)](report)
