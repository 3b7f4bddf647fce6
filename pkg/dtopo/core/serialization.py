import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError

from dtopo.core.complex import SIGNS, Cell, PrecubicalSet
from dtopo.core.homotopy import (
    Certificate,
    DheCertificate,
    HomotopyWitness,
    InessentialCertificate,
    RatherCertificate,
    WitnessChain,
)
from dtopo.core.maps import AdmissibleMap
from dtopo.errors import CertificateError, ComplexError
from dtopo.logging_config import get_logger
from dtopo.models import CertificateManifest, ComplexFile, MapRecord, WitnessRecord

logger = get_logger(__name__)

PathLike = Union[str, Path]


def complex_to_dict(X: PrecubicalSet) -> Dict[str, Any]:
    """Canonical structured form: cells by (dim, id), face keys numeric, no faces on vertices."""
    cells: List[Dict[str, Any]] = []
    for c in X.cells:
        entry: Dict[str, Any] = {"id": c.id, "dim": c.dim}
        if c.dim > 0:
            entry["faces"] = {
                str(i + 1): {sign: c.faces[i][k] for k, sign in enumerate(SIGNS) if c.faces[i][k] is not None}
                for i in range(len(c.faces))
            }
        cells.append(entry)
    return {"name": X.name, "cells": cells}


def dumps_complex(X: PrecubicalSet) -> str:
    return json.dumps(complex_to_dict(X), indent=2) + "\n"


def complex_from_record(record: ComplexFile, default_name: str = "") -> PrecubicalSet:
    """
    Build a complex from a parsed file record.

    Missing face entries become violations at validation time; face
    indices outside 1..dim are a format error.

    Raises:
        ComplexError: If a face key is not an index of the cell
    """
    cells = []
    for rec in record.cells:
        faces = []
        for key in rec.faces:
            if not key.isdigit() or not 1 <= int(key) <= rec.dim:
                raise ComplexError(f"cell {rec.id!r}: face index {key!r} outside 1..{rec.dim}")
            unknown = set(rec.faces[key]) - set(SIGNS)
            if unknown:
                raise ComplexError(f"cell {rec.id!r}: unknown face sign(s) {sorted(unknown)}")
        for i in range(1, rec.dim + 1):
            entry = rec.faces.get(str(i), {})
            faces.append((entry.get("-"), entry.get("+")))
        cells.append(Cell(rec.id, rec.dim, tuple(faces)))
    return PrecubicalSet(cells, name=record.name or default_name)


def loads_complex(text: str, default_name: str = "") -> PrecubicalSet:
    """
    Parse the complex file format.

    Raises:
        ComplexError: If the text is not a well-formed complex file
    """
    try:
        record = ComplexFile.model_validate_json(text)
    except ValidationError as e:
        raise ComplexError(f"malformed complex file: {e.error_count()} error(s): {e.errors()[0]['msg']}")
    return complex_from_record(record, default_name)


def load_complex(path: PathLike) -> PrecubicalSet:
    """
    Read a complex file.

    Args:
        path: Path to the JSON complex file

    Returns:
        The (not yet validated) complex

    Raises:
        ComplexError: If the file cannot be read or parsed
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        logger.error(f"Failed to read complex file {path}: {e}")
        raise ComplexError(f"cannot read {path}: {e}")
    X = loads_complex(text, default_name=path.stem)
    logger.info(f"Loaded {X!r} from {path}")
    return X


def save_complex(X: PrecubicalSet, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_complex(X), encoding="utf-8")
    logger.info(f"Wrote {X!r} to {path}")
    return path


def map_to_record(f: AdmissibleMap) -> MapRecord:
    return MapRecord(source=f.source.name, target=f.target.name, vertices=dict(f.items()))


def load_map(path: PathLike, source: PrecubicalSet, target: PrecubicalSet) -> AdmissibleMap:
    """
    Read a map file against the given source and target complexes.

    Raises:
        ComplexError: If the file is malformed or mentions unknown vertices
    """
    path = Path(path)
    try:
        record = MapRecord.model_validate_json(path.read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        logger.error(f"Failed to read map file {path}: {e}")
        raise ComplexError(f"cannot read map file {path}: {e}")
    if record.source != source.name or record.target != target.name:
        logger.warning(
            f"Map file {path.name} names {record.source}->{record.target}, "
            f"using {source.name}->{target.name}"
        )
    return AdmissibleMap(source, target, record.vertices)


def save_map(f: AdmissibleMap, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(map_to_record(f).model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def witness_to_record(H: HomotopyWitness) -> WitnessRecord:
    return WitnessRecord(direction=H.direction, w={v: list(p) for v, p in sorted(H.w.items())})


def load_witness(path: PathLike, start: AdmissibleMap, end: AdmissibleMap) -> HomotopyWitness:
    """
    Read a witness file linking start to end.

    Raises:
        ComplexError: If the file is malformed
    """
    path = Path(path)
    try:
        record = WitnessRecord.model_validate_json(path.read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        logger.error(f"Failed to read witness file {path}: {e}")
        raise ComplexError(f"cannot read witness file {path}: {e}")
    return HomotopyWitness(record.direction, start, end, {v: tuple(p) for v, p in record.w.items()})


def save_witness(H: HomotopyWitness, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(witness_to_record(H).model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


MANIFEST = "certificate.json"


def _write(path: Path, model) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return path


def save_certificate(certificate: Certificate, directory: PathLike) -> List[Path]:
    """
    Write a certificate as map and witness files under directory.

    Layout: certificate.json names the kind; map.json is the certified map.
    Inessential chains add chain-NN.json maps and witness-NN.json files
    (witness NN links chain-NN to chain-NN+1). Rather certificates add
    helper.json and the helper-proof/ and composite-proof/ subdirectories;
    equivalences add inverse.json, source-side/ and target-side/.

    Returns:
        Written files in write order
    """
    directory = Path(directory)
    written: List[Path] = []
    if isinstance(certificate, InessentialCertificate):
        chain = certificate.chain
        manifest = CertificateManifest(kind="inessential", alpha=certificate.alpha, chain_length=len(chain))
        written.append(_write(directory / MANIFEST, manifest))
        written.append(_write(directory / "map.json", map_to_record(certificate.map)))
        for i, m in enumerate(chain.maps):
            written.append(_write(directory / f"chain-{i:02d}.json", map_to_record(m)))
        for i, H in enumerate(chain.witnesses):
            written.append(_write(directory / f"witness-{i:02d}.json", witness_to_record(H)))
    elif isinstance(certificate, RatherCertificate):
        written.append(_write(directory / MANIFEST, CertificateManifest(kind="rather", alpha=certificate.alpha)))
        written.append(_write(directory / "map.json", map_to_record(certificate.map)))
        written.append(_write(directory / "helper.json", map_to_record(certificate.helper)))
        written += save_certificate(certificate.helper_proof, directory / "helper-proof")
        written += save_certificate(certificate.composite_proof, directory / "composite-proof")
    elif isinstance(certificate, DheCertificate):
        written.append(_write(directory / MANIFEST, CertificateManifest(kind="dhe", alpha=certificate.alpha)))
        written.append(_write(directory / "map.json", map_to_record(certificate.map)))
        written.append(_write(directory / "inverse.json", map_to_record(certificate.inverse)))
        written += save_certificate(certificate.source_side, directory / "source-side")
        written += save_certificate(certificate.target_side, directory / "target-side")
    else:
        raise CertificateError(f"not a certificate: {certificate!r}")
    logger.info(f"Wrote {len(written)} certificate files to {directory}")
    return written


def _manifest(directory: Path) -> CertificateManifest:
    try:
        return CertificateManifest.model_validate_json((directory / MANIFEST).read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        logger.error(f"Failed to read certificate manifest in {directory}: {e}")
        raise CertificateError(f"cannot read certificate in {directory}: {e}")


def load_certificate(directory: PathLike, source: PrecubicalSet,
                     target: Optional[PrecubicalSet] = None) -> Certificate:
    """
    Read a certificate directory written by save_certificate.

    Args:
        directory: Certificate directory
        source: Source complex of the certified map
        target: Target complex; defaults to source for endomap certificates

    Raises:
        CertificateError: If the manifest is missing or the layout is incomplete
    """
    directory = Path(directory)
    manifest = _manifest(directory)
    target = target or source
    f = load_map(directory / "map.json", source, target)
    if manifest.kind == "inessential":
        n = manifest.chain_length or 0
        maps = [load_map(directory / f"chain-{i:02d}.json", source, source) for i in range(n + 1)]
        witnesses = [
            load_witness(directory / f"witness-{i:02d}.json", maps[i], maps[i + 1]) for i in range(n)
        ]
        return InessentialCertificate(f, manifest.alpha, WitnessChain(maps, witnesses))
    if manifest.kind == "rather":
        helper = load_map(directory / "helper.json", source, source)
        return RatherCertificate(
            f, manifest.alpha, helper,
            load_certificate(directory / "helper-proof", source),
            load_certificate(directory / "composite-proof", source),
        )
    inverse = load_map(directory / "inverse.json", target, source)
    return DheCertificate(
        f, manifest.alpha, inverse,
        load_certificate(directory / "source-side", source),
        load_certificate(directory / "target-side", target),
    )


def resolve_complex(arg: str) -> PrecubicalSet:
    """A complex from a file path, or from a builder spec such as 'boundary-cube:2'."""
    from dtopo.core.builders import parse_builder_spec

    if Path(arg).is_file():
        return load_complex(arg)
    built = parse_builder_spec(arg)
    if built is None:
        raise ComplexError(f"{arg!r} is neither a complex file nor a known builder")
    return built
