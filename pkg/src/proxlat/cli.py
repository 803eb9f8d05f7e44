"""Command-line front end.

Exit status is 0 on success, 1 when an input fails validation (the report
goes to stderr) and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from . import io as pio
from .concepts import concept_proximity_table, decomposition, fca_lattice, recommend, representable_concepts
from .exceptions import ProxlatError, ValidationError
from .matrix import verify_decomposition
from .values import format_value
from .vectors import dm_completion

CONTEXT_COMMANDS = ("validate-matrix", "concepts", "table", "decompose", "verify", "recommend", "fca")
PROXET_COMMANDS = ("validate-proxet", "dm-complete")
COMMANDS = PROXET_COMMANDS[:1] + CONTEXT_COMMANDS + PROXET_COMMANDS[1:]

FORMATS = {
    "validate-proxet": ("text", "csv"),
    "validate-matrix": ("text", "csv"),
    "concepts": ("json", "text"),
    "table": ("csv", "json"),
    "decompose": ("json", "csv"),
    "verify": ("text", "json"),
    "recommend": ("text", "json"),
    "fca": ("dot", "json", "text"),
    "dm-complete": ("dot", "json", "text"),
}


@dataclass
class AnalysisRequest:
    command: str
    input: Path
    stars: Optional[int] = None
    mode: Optional[str] = None
    rows: Optional[Path] = None
    cols: Optional[Path] = None
    dedup: bool = False
    format: Optional[str] = None
    output: Optional[Path] = None
    subject: Optional[str] = None
    side: str = "users"
    k: Optional[int] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.command not in CONTEXT_COMMANDS:
            for opt in ("stars", "rows", "cols"):
                if getattr(self, opt) is not None:
                    raise ValueError(f"--{opt} only applies to context-matrix commands")
        if self.stars is not None and self.stars < 1:
            raise ValueError("--stars must be a positive integer")
        if self.format is None:
            self.format = FORMATS[self.command][0]
        elif self.format not in FORMATS[self.command]:
            raise ValueError(f"{self.command} supports --format {', '.join(FORMATS[self.command])}")
        if self.command == "recommend" and self.subject is None:
            raise ValueError("recommend needs --subject")


@dataclass
class Outcome:
    status: int
    stdout: str = ""
    stderr: str = ""
    artifacts: List[Path] = field(default_factory=list)


def _load_context(req: AnalysisRequest):
    rows = pio.read_proxet(req.rows) if req.rows else None
    cols = pio.read_proxet(req.cols) if req.cols else None
    return pio.read_context(req.input, stars=req.stars, rows_proxet=rows, cols_proxet=cols)


def _concepts_text(concepts) -> str:
    lines = []
    for c in concepts:
        low = " ".join(format_value(v) for v in c.lower.values)
        up = " ".join(format_value(v) for v in c.upper.values)
        lines.append(f"{c.label}: lower ({low}) upper ({up})")
    return "\n".join(lines) + "\n"


def _dispatch(req: AnalysisRequest) -> Outcome:
    cmd, fmt = req.command, req.format

    if cmd in PROXET_COMMANDS:
        a = pio.read_proxet(req.input, mode=req.mode)
        if cmd == "validate-proxet":
            body = pio.write_proxet(a) if fmt == "csv" else f"valid {a.mode} proxet with {len(a)} elements\n"
            return Outcome(0, body)
        comp = dm_completion(a)
        labels = [comp.cut_label(i) for i in range(len(comp.cuts))]
        if fmt == "dot":
            return Outcome(0, pio.hasse_dot("completion", labels, comp.covers()))
        if fmt == "json":
            return Outcome(0, pio.to_json_text({
                "cuts": [dict(label=lab, **c.to_json()) for lab, c in zip(labels, comp.cuts)],
                "embedding": {str(x): labels[i] for x, i in comp.embedding.items()},
                "covers": [[labels[i], labels[j]] for i, j in comp.covers()],
            }))
        return Outcome(0, "\n".join(labels) + "\n")

    _, _, phi = _load_context(req)

    if cmd == "validate-matrix":
        if fmt == "csv":
            return Outcome(0, pio.write_matrix(phi))
        n, m = phi.shape
        return Outcome(0, f"valid proximity matrix {n}x{m}\n")

    if cmd == "concepts":
        concepts = representable_concepts(phi, dedup=req.dedup)
        if fmt == "json":
            return Outcome(0, pio.to_json_text([c.to_json() for c in concepts]))
        return Outcome(0, _concepts_text(concepts))

    if cmd == "table":
        table = concept_proximity_table(phi, dedup=req.dedup)
        if fmt == "json":
            return Outcome(0, pio.to_json_text(table.to_json()))
        return Outcome(0, pio.csv_text(table.to_rows()))

    if cmd == "decompose":
        p, e = decomposition(phi)
        if fmt == "json":
            return Outcome(0, pio.to_json_text({
                "concepts": pio.proxet_rows(p.target),
                "P": pio.matrix_rows(p),
                "E": pio.matrix_rows(e),
            }))
        return Outcome(0, "# P\n" + pio.write_matrix(p) + "# E\n" + pio.write_matrix(e))

    if cmd == "verify":
        p, e = decomposition(phi)
        report = verify_decomposition(p, e, phi)
        body = pio.to_json_text(report.to_json()) if fmt == "json" else str(report) + "\n"
        if report.ok:
            return Outcome(0, body)
        return Outcome(1, body, "decomposition check failed\n")

    if cmd == "recommend":
        table = concept_proximity_table(phi, dedup=req.dedup)
        try:
            ranked = recommend(table, req.subject, req.side, req.k)
        except KeyError as e:
            raise ProxlatError(str(e.args[0])) from None
        if fmt == "json":
            return Outcome(0, pio.to_json_text([{"label": lab, "prox": format_value(v)} for lab, v in ranked]))
        return Outcome(0, "".join(f"{lab}\t{format_value(v)}\n" for lab, v in ranked))

    if cmd == "fca":
        lat = fca_lattice(phi)
        labels = [lat.concept_label(i) for i in range(len(lat.concepts))]
        if fmt == "dot":
            return Outcome(0, pio.hasse_dot("concepts", labels, lat.covers()))
        if fmt == "json":
            return Outcome(0, pio.to_json_text({
                "concepts": [
                    {"extent": [str(o) for o in lat.objects if o in c.extent],
                     "intent": [str(a) for a in lat.attributes if a in c.intent]}
                    for c in lat.concepts
                ],
                "top": lat.top,
                "bottom": lat.bottom,
                "covers": lat.covers(),
            }))
        return Outcome(0, "\n".join(labels) + "\n")

    raise AssertionError(cmd)


def run(req: AnalysisRequest) -> Outcome:
    """Execute a request, mapping failures onto exit statuses."""
    try:
        out = _dispatch(req)
    except ValidationError as e:
        return Outcome(1, "", e.report() + "\n")
    except (ValueError, OSError) as e:
        return Outcome(2, "", f"error: {e}\n")
    if req.output is not None and out.stdout:
        req.output.write_text(out.stdout, encoding="utf-8")
        out.artifacts.append(req.output)
        out.stdout = ""
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="proxlat", description="Quantitative concept analysis over proximity sets.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def common(p, formats):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("-o", "--output", type=Path, help="write the result here instead of stdout")

    helps = {
        "validate-proxet": "check the proxet axioms of a proximity table",
        "validate-matrix": "check that a context is a proximity matrix",
        "concepts": "list the representable concepts",
        "table": "proximity table of the representable concepts",
        "decompose": "projection and embedding through the representable concepts",
        "verify": "check the decomposition clause by clause",
        "recommend": "rank users or items by proximity from a subject",
        "fca": "formal concept lattice of a binary context",
        "dm-complete": "Dedekind-MacNeille completion of a 0/1 proxet",
    }
    for cmd in COMMANDS:
        p = sub.add_parser(cmd, help=helps[cmd])
        p.add_argument("input", type=Path)
        common(p, FORMATS[cmd])
        if cmd in PROXET_COMMANDS:
            p.add_argument("--mode", choices=("extensional", "intensional"))
        else:
            p.add_argument("--stars", type=int, metavar="S", help="cells are integer star ratings out of S")
            p.add_argument("--rows", type=Path, help="proxet file for the row carrier (default discrete)")
            p.add_argument("--cols", type=Path, help="proxet file for the column carrier (default discrete)")
        if cmd in ("concepts", "table", "recommend"):
            p.add_argument("--dedup", action="store_true", help="merge generators with identical concepts")
        if cmd == "recommend":
            p.add_argument("--subject", required=True)
            p.add_argument("--side", choices=("users", "items"), default="users")
            p.add_argument("-k", type=int, default=None)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    kwargs = {k: v for k, v in vars(ns).items() if v is not None}
    try:
        req = AnalysisRequest(**kwargs)
    except ValueError as e:
        parser.error(str(e))
    out = run(req)
    if out.stdout:
        sys.stdout.write(out.stdout)
    if out.stderr:
        sys.stderr.write(out.stderr)
    return out.status


if __name__ == "__main__":
    sys.exit(main())
