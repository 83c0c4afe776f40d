"""Lossless, byte-stable serialization of rings, spectra, and rule tables.

Documents are plain dicts; the canonical JSON rendering sorts keys, indents
two spaces, and normalizes every float through a 17-significant-digit
round-trip so identical inputs always produce identical bytes.  Complex
numbers appear as ``[re, im]`` pairs.
"""

from __future__ import annotations

import json

import numpy as np

from .fusion import FusionRing, FusionRuleTable
from .liecore import SimpleType, build_root_system


def _normalize(obj):
    if isinstance(obj, dict):
        return {str(k): _normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_normalize(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        obj = float(obj)
    if isinstance(obj, float):
        return float(format(obj, ".17g"))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_normalize(float(obj.real)), _normalize(float(obj.imag))]
    return obj


def canonical_json_bytes(doc) -> bytes:
    return (json.dumps(_normalize(doc), sort_keys=True, indent=2) + "\n").encode("ascii")


def ring_to_doc(ring: FusionRing) -> dict:
    """Ring document: basis, sparse structure triples, involution, unit."""
    triples = []
    n = ring.size
    for a in range(n):
        for b in range(n):
            for c in range(n):
                v = int(ring.structure[a, b, c])
                if v:
                    triples.append([a, b, c, v])
    return {
        "kind": "fusion_ring",
        "algebra": str(ring.rs.simple_type),
        "level": ring.level,
        "basis": [list(w) for w in ring.basis],
        "structure": triples,
        "involution": [[a, ring.involution[a]] for a in range(n)],
        "unit": ring.unit_index,
    }


def ring_from_doc(doc: dict) -> FusionRing:
    """Rebuild a FusionRing from its document, structure tensor verbatim."""
    if doc.get("kind") != "fusion_ring":
        raise ValueError("document is not a fusion_ring")
    rs = build_root_system(SimpleType.parse(doc["algebra"]))
    basis = tuple(tuple(int(x) for x in w) for w in doc["basis"])
    n = len(basis)
    structure = np.zeros((n, n, n), dtype=np.int64)
    for a, b, c, v in doc["structure"]:
        structure[a, b, c] = v
    involution = [0] * n
    for a, b in doc["involution"]:
        involution[a] = b
    return FusionRing(
        rs=rs,
        level=int(doc["level"]),
        basis=basis,
        structure=structure,
        unit_index=int(doc["unit"]),
        involution=tuple(involution),
        index={w: i for i, w in enumerate(basis)},
    )


def spectral_to_doc(table) -> dict:
    """Spectrum document: row-major complex character matrix plus weights."""
    return {
        "kind": "spectral_table",
        "algebra": str(table.rs.simple_type),
        "level": table.level,
        "basis": [list(w) for w in table.basis],
        "sigma": [[_normalize(z) for z in row] for row in table.sigma.tolist()],
        "delta": [float(p.delta) for p in table.points],
        "chi_omega": [float(p.chi_omega) for p in table.points],
        "unitarity_residual": float(table.unitarity_residual),
        "diagonalization_residual": float(table.diagonalization_residual),
    }


def rule_table_to_doc(table: FusionRuleTable) -> dict:
    """Rule-table document: labels, involution pairs, nonzero multiset values."""
    values = sorted((list(k), v) for k, v in table.values.items() if v)
    return {
        "kind": "fusion_rule_table",
        "labels": list(table.labels),
        "involution": [[a, table.involution[a]] for a in range(table.size)],
        "depth": table.depth,
        "values": [[list(map(int, k)), int(v)] for k, v in values],
    }


def rule_table_from_doc(doc: dict) -> FusionRuleTable:
    if doc.get("kind") != "fusion_rule_table":
        raise ValueError("document is not a fusion_rule_table")
    labels = tuple(str(x) for x in doc["labels"])
    involution = [0] * len(labels)
    for a, b in doc["involution"]:
        involution[a] = b
    values = {tuple(sorted(int(i) for i in k)): int(v) for k, v in doc["values"]}
    return FusionRuleTable(
        labels=labels,
        involution=tuple(involution),
        depth=int(doc["depth"]),
        values=values,
    )


def csv_bytes(doc: dict) -> bytes:
    """Flat CSV rendering of the payload kinds that have a natural table form."""
    kind = doc.get("kind")
    lines = []
    if kind == "fusion_ring":
        lines.append("a,b,c,N")
        for a, b, c, v in doc["structure"]:
            lines.append(f"{a},{b},{c},{v}")
    elif kind == "spectral_table":
        lines.append("row,col,re,im")
        for r, row in enumerate(doc["sigma"]):
            for c, (re, im) in enumerate(row):
                lines.append(f"{r},{c},{format(re, '.17g')},{format(im, '.17g')}")
    else:
        lines.append("key,value")
        for k in sorted(doc):
            lines.append(f"{k},{json.dumps(_normalize(doc[k]))}")
    return ("\n".join(lines) + "\n").encode("ascii")
