"""Ingest hyperedge datasets and serialize run reports.

Two input formats are supported: the public two-file simplex format (one file
of per-simplex vertex counts, one file of concatenated vertex lists) and a
plain text hyperedge list (one comma-separated hyperedge per line, optional
``; weight`` suffix). Vertex labels are remapped to dense 0-based ids in first
appearance order, and nothing is dropped silently: deduplicated members are
counted on the result.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .hypergraph import Hyperedge, Hypergraph

__all__ = [
    "DatasetFormatError",
    "SimplexDatasetRef",
    "LoadResult",
    "RunReport",
    "load_simplex_dataset",
    "load_hyperedge_list",
    "write_report",
]


class DatasetFormatError(ValueError):
    """Input file violates the expected format; message carries path and line number."""


@dataclass(frozen=True)
class SimplexDatasetRef:
    """Locations of the two-file simplex format (vertex counts + concatenated vertices)."""

    nverts_path: Path
    simplices_path: Path


@dataclass(frozen=True)
class LoadResult:
    """A parsed hypergraph plus the label remapping and ingestion counters."""

    hypergraph: Hypergraph
    labels: tuple  # dense node id -> original label
    duplicates_removed: int = 0


def _read_int_tokens(path: Path) -> list[tuple[int, int]]:
    """All whitespace-separated integers in the file as (value, line_number) pairs."""
    out = []
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            for tok in line.split():
                try:
                    out.append((int(tok), ln))
                except ValueError:
                    raise DatasetFormatError(f"{path}:{ln}: non-integer token {tok!r}") from None
    return out


def load_simplex_dataset(ref: SimplexDatasetRef) -> LoadResult:
    """Parse the two-file simplex format into a unit-weight hypergraph.

    One hyperedge per simplex with homogeneous contribution fractions.
    Duplicate vertices inside one simplex are removed (counted on the result);
    timestamps files, when the dataset has them, are simply not read.
    """
    nverts = _read_int_tokens(Path(ref.nverts_path))
    verts = _read_int_tokens(Path(ref.simplices_path))
    total = sum(v for v, _ in nverts)
    if total != len(verts):
        raise DatasetFormatError(
            f"{ref.nverts_path}: vertex counts sum to {total} but "
            f"{ref.simplices_path} holds {len(verts)} entries"
        )
    label_to_id: dict[int, int] = {}
    edges = []
    duplicates = 0
    pos = 0
    for count, ln in nverts:
        if count <= 0:
            raise DatasetFormatError(f"{ref.nverts_path}:{ln}: empty simplex (count {count})")
        members = []
        seen = set()
        for label, vln in verts[pos:pos + count]:
            if label <= 0:
                raise DatasetFormatError(
                    f"{ref.simplices_path}:{vln}: vertex label {label} is not positive"
                )
            if label in seen:
                duplicates += 1
                continue
            seen.add(label)
            if label not in label_to_id:
                label_to_id[label] = len(label_to_id)
            members.append(label_to_id[label])
        pos += count
        edges.append(Hyperedge(tuple(members), 1.0, None))
    h = Hypergraph(n=len(label_to_id), edges=tuple(edges))
    return LoadResult(hypergraph=h, labels=tuple(label_to_id), duplicates_removed=duplicates)


def load_hyperedge_list(path) -> LoadResult:
    """Parse a plain hyperedge list: one line per hyperedge, ``a,b,c`` or ``a,b,c;2.5``."""
    path = Path(path)
    label_to_id: dict[str, int] = {}
    edges = []
    duplicates = 0
    with open(path) as fh:
        for ln, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            head, sep, tail = line.partition(";")
            weight = 1.0
            if sep:
                try:
                    weight = float(tail.strip())
                except ValueError:
                    raise DatasetFormatError(f"{path}:{ln}: bad weight {tail.strip()!r}") from None
                if weight <= 0:
                    raise DatasetFormatError(f"{path}:{ln}: nonpositive weight {weight}")
            labels = [tok.strip() for tok in head.split(",")]
            if any(not tok for tok in labels):
                raise DatasetFormatError(f"{path}:{ln}: empty node label")
            members = []
            seen = set()
            for label in labels:
                if label in seen:
                    duplicates += 1
                    continue
                seen.add(label)
                if label not in label_to_id:
                    label_to_id[label] = len(label_to_id)
                members.append(label_to_id[label])
            edges.append(Hyperedge(tuple(members), weight, None))
    h = Hypergraph(n=len(label_to_id), edges=tuple(edges))
    return LoadResult(hypergraph=h, labels=tuple(label_to_id), duplicates_removed=duplicates)


@dataclass
class RunReport:
    """Everything one pipeline run produced, ready for serialization."""

    n: int
    m: int
    overall_internal: float
    overall_expressed: float
    polarization: float
    elapsed_seconds: float
    tau: int | None = None
    seed: int | None = None
    x: np.ndarray | None = None
    z: np.ndarray | None = None
    config: dict | None = field(default=None, repr=False)


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_report(report: RunReport, path, fmt: str = "json") -> None:
    """Serialize a report as JSON (scalars + config echo) or CSV (per-node id, x, z).

    Floats are written with 17 significant digits so re-reading reproduces
    them bit for bit. ``path`` "-" writes to stdout.
    """
    if fmt == "json":
        payload = {
            "n": report.n,
            "m": report.m,
            "overall_internal": float(_fmt(report.overall_internal)),
            "overall_expressed": float(_fmt(report.overall_expressed)),
            "polarization": float(_fmt(report.polarization)),
            "elapsed_seconds": report.elapsed_seconds,
        }
        if report.tau is not None:
            payload["tau"] = report.tau
        if report.seed is not None:
            payload["seed"] = report.seed
        if report.config is not None:
            payload["config"] = report.config
        text = json.dumps(payload, indent=2) + "\n"
    elif fmt == "csv":
        if report.x is None or report.z is None:
            raise ValueError("csv format needs per-node x and z vectors")
        lines = ["id,x,z"]
        lines += [f"{i},{_fmt(xi)},{_fmt(zi)}" for i, (xi, zi) in enumerate(zip(report.x, report.z))]
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path == "-":
        import sys

        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"could not write report to {path}: {exc}") from exc
