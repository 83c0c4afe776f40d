"""Command-line surface: dimension queries, tables, spectra, and checks.

Exit codes: 0 success, 2 parse/usage error, 3 capacity error, 4 tolerance
breach, 5 axiom or integrity failure.  Output is byte-deterministic for a
fixed query.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CapacityError,
    ConventionError,
    IncompleteTableError,
    NegativeStructureError,
    ToleranceError,
    UnverifiedTypeError,
)
from .fusion import (
    build_fusion_ring,
    fuse,
    genus_dimension,
    sl2_three_point_oracle,
    table_from_ring,
    verify_fusion_rule_axioms,
)
from .liecore import SimpleType, build_root_system
from .serialize import (
    canonical_json_bytes,
    csv_bytes,
    ring_to_doc,
    rule_table_from_doc,
    spectral_to_doc,
)
from .verlinde import (
    _spectral_data,
    spectral_table,
    torsion_order,
    torsion_order_lattice,
    verlinde_dimension,
)

UNITARITY_TOLERANCE = 1e-9


@dataclass
class Query:
    """One CLI request, fully parsed and validated."""

    algebra: SimpleType
    level: int
    command: str
    genus: int = 0
    weights: tuple = ()
    fmt: str = "json"
    allow_unverified: bool = False
    tolerance: float = 1e-6
    axiom_depth: int = 4
    table_file: str | None = None
    golden: str | None = None


@dataclass
class ResultDocument:
    """Query echo, payload, and provenance; exit_code drives the process status."""

    query: dict
    payload: object
    provenance: dict
    exit_code: int = 0

    def to_doc(self) -> dict:
        return {"query": self.query, "payload": self.payload, "provenance": self.provenance}


def parse_weights(text: str, rank: int) -> tuple:
    """Parse semicolon-separated comma-lists of Dynkin labels."""
    weights = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            labels = tuple(int(x) for x in chunk.split(","))
        except ValueError:
            raise ValueError(f"cannot parse weight {chunk!r}") from None
        if len(labels) != rank:
            raise ValueError(f"weight {chunk!r} has {len(labels)} labels, expected {rank}")
        weights.append(labels)
    return tuple(weights)


def _query_echo(q: Query) -> dict:
    return {
        "algebra": str(q.algebra),
        "level": q.level,
        "command": q.command,
        "genus": q.genus,
        "weights": [list(w) for w in q.weights],
        "format": q.fmt,
        "allow_unverified": q.allow_unverified,
        "tolerance": q.tolerance,
        "axiom_depth": q.axiom_depth,
    }


def _provenance(rs, level, tolerance, residuals=None) -> dict:
    prov = {
        "basis_order": "lexicographic on Dynkin labels",
        "h_vee": rs.dual_coxeter,
        "torsion_order": torsion_order(rs, level),
        "tolerance": tolerance,
        "verification": (
            "certified for this family"
            if rs.simple_type.verified
            else "unverified: no certification is known for exceptional types; "
            "results are reported, not certified"
        ),
    }
    if residuals:
        prov["residuals"] = residuals
    return prov


def run_query(q: Query) -> ResultDocument:
    """Dispatch a parsed query to the exact and spectral machinery."""
    rs = build_root_system(q.algebra)
    echo = _query_echo(q)

    if q.command == "oracle":
        if str(q.algebra) != "A1":
            raise ValueError("the oracle command is the rank-1 closed form; use --algebra A1")
        if len(q.weights) != 3:
            raise ValueError("oracle expects exactly three weights, e.g. --weights '1;1;2'")
        p, qq, r = (w[0] for w in q.weights)
        value = sl2_three_point_oracle(p, qq, r, q.level)
        return ResultDocument(echo, {"value": value}, _provenance(rs, q.level, q.tolerance))

    if q.command == "fuse":
        if len(q.weights) != 2:
            raise ValueError("fuse expects exactly two weights, e.g. --weights '1,0;0,1'")
        prod = fuse(rs, q.level, q.weights[0], q.weights[1], allow_unverified=q.allow_unverified)
        payload = {"decomposition": [[list(w), c] for w, c in sorted(prod.items())]}
        return ResultDocument(echo, payload, _provenance(rs, q.level, q.tolerance))

    ring = build_fusion_ring(rs, q.level, allow_unverified=q.allow_unverified)

    if q.command == "dim":
        exact = genus_dimension(ring, q.genus, q.weights)
        raw, rounded = verlinde_dimension(
            rs, q.level, q.genus, q.weights,
            allow_unverified=q.allow_unverified, tolerance=q.tolerance,
        )
        residual = abs(raw - exact)
        if residual >= q.tolerance or rounded != exact:
            raise ToleranceError(
                f"exact and spectral dimensions disagree: exact {exact}, raw {raw!r}"
            )
        payload = {
            "dimension": exact,
            "exact": exact,
            "numeric_raw": raw,
            "numeric_rounded": rounded,
            "residual": residual,
        }
        prov = _provenance(rs, q.level, q.tolerance, {"exact_vs_numeric": residual})
        return ResultDocument(echo, payload, prov)

    if q.command == "table":
        return ResultDocument(echo, ring_to_doc(ring), _provenance(rs, q.level, q.tolerance))

    if q.command == "smatrix":
        table = spectral_table(rs, q.level, ring=ring, allow_unverified=q.allow_unverified)
        payload = spectral_to_doc(table)
        residuals = {
            "unitarity": table.unitarity_residual,
            "diagonalization": table.diagonalization_residual,
        }
        doc = ResultDocument(echo, payload, _provenance(rs, q.level, q.tolerance, residuals))
        if table.unitarity_residual >= UNITARITY_TOLERANCE:
            raise ToleranceError(f"unitarity residual {table.unitarity_residual}")
        if table.diagonalization_residual >= q.tolerance:
            raise ToleranceError(f"diagonalization residual {table.diagonalization_residual}")
        return doc

    if q.command == "check":
        return _run_check(q, rs, ring, echo)

    raise ValueError(f"unknown command {q.command!r}")


def _run_check(q: Query, rs, ring, echo) -> ResultDocument:
    if q.table_file:
        with open(q.table_file, "rb") as fh:
            doc = json.load(fh)
        table = rule_table_from_doc(doc)
        report = verify_fusion_rule_axioms(table, depth=min(q.axiom_depth, table.depth - 1))
        payload = _report_payload(report)
        payload["source"] = q.table_file
        return ResultDocument(
            echo, payload, _provenance(rs, q.level, q.tolerance),
            exit_code=0 if report.passed else 5,
        )

    table = table_from_ring(ring, depth=q.axiom_depth + 1)
    report = verify_fusion_rule_axioms(table, depth=q.axiom_depth)
    spec = spectral_table(rs, q.level, ring=ring, allow_unverified=q.allow_unverified)
    basis, chi, delta = _spectral_data(rs, q.level)
    order = torsion_order(rs, q.level)
    identity_err = float(
        np.max(np.abs(np.sum(np.abs(chi) ** 2, axis=1) * delta - order)) / order
    )
    torsion_ok = order == torsion_order_lattice(rs, q.level)

    payload = _report_payload(report)
    payload.update(
        {
            "unitarity_residual": spec.unitarity_residual,
            "diagonalization_residual": spec.diagonalization_residual,
            "spectral_identity_rel_error": identity_err,
            "torsion_lattice_match": torsion_ok,
        }
    )
    residuals = {
        "unitarity": spec.unitarity_residual,
        "diagonalization": spec.diagonalization_residual,
        "spectral_identity": identity_err,
    }
    doc = ResultDocument(echo, payload, _provenance(rs, q.level, q.tolerance, residuals))
    if not report.passed or not torsion_ok:
        doc.exit_code = 5
        return doc
    if (
        spec.unitarity_residual >= UNITARITY_TOLERANCE
        or spec.diagonalization_residual >= q.tolerance
        or identity_err >= q.tolerance
    ):
        raise ToleranceError("spectral residuals exceed tolerance")
    return doc


def _report_payload(report) -> dict:
    return {
        "passed": report.passed,
        "f0_ok": report.f0_ok,
        "f1_ok": report.f1_ok,
        "f2_ok": report.f2_ok,
        "f2_failures": [[list(x), list(y)] for x, y in report.f2_failures[:10]],
        "kernel": list(report.kernel),
        "nondegenerate": report.nondegenerate,
        "unit": report.unit,
        "gorenstein_ok": report.gorenstein_ok,
    }


def _render(result: ResultDocument, fmt: str) -> bytes:
    if fmt == "json":
        return canonical_json_bytes(result.to_doc())
    if fmt == "csv":
        payload = result.payload if isinstance(result.payload, dict) else {"value": result.payload}
        return csv_bytes(payload)
    lines = [f"{k} = {v}" for k, v in sorted(_flatten(result.payload))]
    lines.append(f"exit = {result.exit_code}")
    return ("\n".join(lines) + "\n").encode()


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    else:
        yield (prefix.rstrip("."), obj)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fusionring",
        description="Fusion rings of simple Lie algebras with exact and spectral lanes",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("dim", "fuse", "table", "smatrix", "check", "oracle"):
        p = sub.add_parser(name)
        p.add_argument("--algebra", required=True, help="family plus rank, e.g. A2, D4")
        p.add_argument("--level", required=True, type=int)
        p.add_argument("--weights", default="", help="semicolon-separated Dynkin labels, e.g. '1,0;0,1'")
        p.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default="json")
        p.add_argument("--allow-unverified", action="store_true")
        p.add_argument("--tolerance", type=float, default=1e-6)
        p.add_argument("--axiom-depth", type=int, default=4)
        p.add_argument("--out", default=None, help="write output bytes to a file instead of stdout")
        if name == "dim":
            p.add_argument("--genus", type=int, default=0)
        if name == "check":
            p.add_argument("--table-file", default=None, help="verify an ingested rule table")
            p.add_argument("--golden", default=None, help="compare the ring document to a golden file")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        algebra = SimpleType.parse(args.algebra)
        rank = algebra.rank
        q = Query(
            algebra=algebra,
            level=args.level,
            command=args.command,
            genus=getattr(args, "genus", 0),
            weights=parse_weights(args.weights, rank),
            fmt=args.fmt,
            allow_unverified=args.allow_unverified,
            tolerance=args.tolerance,
            axiom_depth=args.axiom_depth,
            table_file=getattr(args, "table_file", None),
            golden=getattr(args, "golden", None),
        )
        if q.level < 1:
            raise ValueError("level must be a positive integer")
        result = run_query(q)
        if q.command == "check" and q.golden:
            with open(q.golden, "rb") as fh:
                stored = fh.read()
            fresh = canonical_json_bytes(ring_to_doc(build_fusion_ring(
                build_root_system(q.algebra), q.level, allow_unverified=q.allow_unverified)))
            if stored != fresh:
                result.payload["golden_match"] = False
                result.exit_code = 5
            else:
                result.payload["golden_match"] = True
    except (ValueError, UnverifiedTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return 3
    except (ToleranceError, ConventionError) as exc:
        print(f"tolerance breach: {exc}", file=sys.stderr)
        return 4
    except (NegativeStructureError, IncompleteTableError) as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return 5

    data = _render(result, q.fmt)
    out = getattr(args, "out", None)
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
