from pydantic import BaseModel, Field
from typing import List, Optional, Dict, Literal


class CellRecord(BaseModel):
    """Model for one cell of a complex file."""
    id: str = Field(..., min_length=1, description="Unique cell identifier")
    dim: int = Field(..., ge=0, description="Cell dimension")
    faces: Dict[str, Dict[str, str]] = Field(default_factory=dict, description="Face table: index -> {'-': id, '+': id}")

class ComplexFile(BaseModel):
    """Model for the complex file format."""
    name: str = Field("", description="Complex label")
    cells: List[CellRecord] = Field(..., description="Cells in canonical (dim, id) order")

class MapRecord(BaseModel):
    """Model for the map file format."""
    source: str = Field(..., description="Source complex name")
    target: str = Field(..., description="Target complex name")
    vertices: Dict[str, str] = Field(..., description="Source vertex id -> target vertex id")

class WitnessRecord(BaseModel):
    """Model for the witness file format."""
    direction: Literal["future", "past"] = Field(..., description="Witness direction")
    w: Dict[str, List[str]] = Field(..., description="Source vertex id -> edge ids of its target path")

class Violation(BaseModel):
    """Model for a single validation violation."""
    cell: str = Field(..., description="Offending cell id")
    kind: str = Field(..., description="Violation kind: duplicate, missing-face, dangling, dimension, relation")
    i: Optional[int] = Field(None, description="First face index involved")
    j: Optional[int] = Field(None, description="Second face index involved")
    alpha: Optional[str] = Field(None, description="Sign of the first face")
    beta: Optional[str] = Field(None, description="Sign of the second face")
    detail: str = Field("", description="Human readable explanation")

class ValidationReport(BaseModel):
    """Model for complex validation results."""
    name: str = Field("", description="Complex label")
    passed: bool = Field(..., description="True when no violation was found")
    violations: List[Violation] = Field(default_factory=list, description="Violations in cell order")

class PairClasses(BaseModel):
    """Model for the dihomotopy classes of one vertex pair."""
    src: str = Field(..., description="Source vertex")
    tgt: str = Field(..., description="Target vertex")
    count: int = Field(..., ge=0, description="Number of classes")
    representatives: List[List[str]] = Field(default_factory=list, description="Smallest member of each class, by class id")

class ClassReport(BaseModel):
    """Model for class table output."""
    complex: str = Field(..., description="Complex label")
    mode: Literal["exhaustive", "bounded"] = Field(..., description="Table mode")
    max_len: Optional[int] = Field(None, description="Length bound in bounded mode")
    lower_bound: bool = Field(False, description="True when counts are lower bounds")
    pairs: List[PairClasses] = Field(default_factory=list, description="Per-pair classes in (src, tgt) order")

class VerdictReport(BaseModel):
    """Model for psp / inessential / rather / dhe verdicts."""
    check: str = Field(..., description="Name of the check")
    alpha: Optional[str] = Field(None, description="Homotopy flavour: +, - or 0")
    verdict: str = Field(..., description="true, false, not found within depth, or inconclusive")
    exhaustive: bool = Field(False, description="True when a negative verdict covers the whole search space")
    detail: str = Field("", description="Reason or summary")
    explored: Optional[int] = Field(None, description="Search nodes explored when the budget ran out")
    certificates: List[str] = Field(default_factory=list, description="Certificate files written")

class ComponentEntry(BaseModel):
    """Model for one pair component."""
    label: int = Field(..., description="Component label")
    size: int = Field(..., description="Number of member pairs")
    signature: List[int] = Field(..., description="Distinct class counts of member pairs")
    pairs: List[List[str]] = Field(..., description="Member pairs in canonical order")

class ComponentReport(BaseModel):
    """Model for pair component category output."""
    complex: str = Field(..., description="Complex label")
    objects: int = Field(..., description="Number of components")
    components: List[ComponentEntry] = Field(default_factory=list, description="Components by label")
    merges: List[str] = Field(default_factory=list, description="Registered endomap merges")

class PairAssignment(BaseModel):
    """Model for one pair of a section patch."""
    src: str = Field(..., description="Source vertex")
    tgt: str = Field(..., description="Target vertex")
    class_id: int = Field(..., description="Chosen class id")

class PatchEntry(BaseModel):
    """Model for one patch of a section cover."""
    label: int = Field(..., description="Patch label")
    pairs: List[PairAssignment] = Field(..., description="Pairs in canonical order")

class CoverReport(BaseModel):
    """Model for directed topological complexity output."""
    complex: str = Field(..., description="Complex label")
    dtc: int = Field(..., description="Least number of patches")
    patches: List[PatchEntry] = Field(default_factory=list, description="Witness cover")

class RunConfig(BaseModel):
    """Model for one CLI invocation."""
    command: str = Field(..., description="Command name")
    inputs: List[str] = Field(default_factory=list, description="Input paths or builder specs")
    max_len: Optional[int] = Field(None, gt=0, description="Path length bound")
    depth: int = Field(..., gt=0, description="Zig-zag depth bound")
    budget: int = Field(..., gt=0, description="Search node budget")
    max_k: int = Field(..., gt=0, description="Patch bound for dtc")
    alpha: Literal["+", "-", "0"] = Field("0", description="Homotopy flavour for map checks")
    output_format: Literal["text", "structured"] = Field("text", description="Report format")
    dot: Optional[str] = Field(None, description="DOT output path")
    workers: int = Field(1, gt=0, description="Worker threads")

class CertificateManifest(BaseModel):
    """Model for the manifest of a certificate directory."""
    kind: Literal["inessential", "rather", "dhe"] = Field(..., description="Certificate kind")
    alpha: Literal["+", "-", "0"] = Field(..., description="Homotopy flavour")
    chain_length: Optional[int] = Field(None, ge=0, description="Witness count of an inessential chain")
