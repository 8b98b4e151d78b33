"""Command-line entry point.

    svh <check|cocycles|cohomology|scan|assert-paper>
        --spec <preset name|path> --window N [--inner M]
        [--degree d[,d...]] [--mode leibniz|lie] [--out PATH]
        [--format text|json|csv]

Exit codes: 0 success, 1 violations or failed assertions, 2 bad
configuration, 3 parse error in a rule file.  All rationals are emitted as
num/den integer pairs; reports are byte-identical across runs for identical
configurations.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import AlgebraSpec, check_leibniz
from .cocycles import (
    BilinearForm,
    CohomologyReport,
    ScanTable,
    cocycle_space,
    cohomology,
    convergence_scan,
    normalization_applicable,
)
from .errors import ConfigError, InnerBoundExceedsWindow, ParseError, SvhError, UnknownFamily
from .dsl import parse_algebra
from .presets import PRESETS, LemmaReport, lemma_assertions, preset_spec

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_PARSE = 3

FORMATS = ("text", "json", "csv")
MODES = ("leibniz", "lie")


@dataclass
class RunConfig:
    """Validated invocation of one subcommand."""

    command: str
    spec_source: str
    window: list[int]
    inner: int | None = None
    degrees: list[int] = field(default_factory=lambda: [0])
    mode: str = "leibniz"
    out: str | None = None
    fmt: str = "text"

    def __post_init__(self):
        if not self.window:
            raise ConfigError("at least one window is required")
        if any(n < 0 for n in self.window):
            raise ConfigError("window bounds must be non-negative")
        if any(b <= a for a, b in zip(self.window, self.window[1:])):
            raise ConfigError("windows must be strictly ascending")
        if not self.degrees:
            raise ConfigError("degree list must be nonempty")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")
        if self.fmt not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.inner is not None and self.inner > min(self.window):
            raise ConfigError("inner bound exceeds the window")
        if self.command != "scan" and len(self.window) != 1:
            raise ConfigError(f"'{self.command}' takes a single window bound")
        if self.command == "scan" and len(self.degrees) != 1:
            raise ConfigError("'scan' takes a single degree")


def _rat_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def _form_json(form: BilinearForm) -> list[dict]:
    return [
        {
            "left_family": x.family,
            "left_index": x.index,
            "right_family": y.family,
            "right_index": y.index,
            "num": v.numerator,
            "den": v.denominator,
        }
        for (x, y), v in form.sorted_entries()
    ]


def _form_text(form: BilinearForm, indent: str = "  ") -> list[str]:
    if form.is_zero():
        return [f"{indent}(zero form)"]
    return [f"{indent}({x!r}, {y!r}) -> {v}" for (x, y), v in form.sorted_entries()]


def _lemma_json(report: LemmaReport) -> dict:
    out: dict = {
        "lemma_verdicts": {v.name: ("pass" if v.passed else "fail") for v in report.verdicts},
        "c": _rat_json(report.c) if report.c is not None else None,
    }
    if report.c1 is not None:
        out["c1"] = _rat_json(report.c1)
    return out


def _decorate_representative(spec: AlgebraSpec, report: CohomologyReport):
    """Lemma verdicts plus the c-scaled representative, when they apply."""
    if not (
        report.representatives_normalized
        and len(report.representatives) == 1
        and isinstance(report.degree, int)
    ):
        return None, report.representatives
    rep = report.representatives[0]
    lemmas = lemma_assertions(rep, report.inner)
    if lemmas.c not in (None, 0):
        rep = (1 / lemmas.c) * rep
    return lemmas, [rep]


def _cohomology_json(spec: AlgebraSpec, report: CohomologyReport) -> dict:
    lemmas, reps = _decorate_representative(spec, report)
    out = {
        "algebra": report.algebra,
        "window": report.window,
        "inner": report.inner,
        "degree": report.degree,
        "mode": report.mode,
        "dim_cocycle": report.dim_cocycle,
        "dim_coboundary": report.dim_coboundary,
        "dim_cohomology_inner": report.dim_cohomology,
        "skipped_triples": report.skipped_triples,
        "representatives": [_form_json(r) for r in reps],
    }
    if lemmas is not None:
        out.update(_lemma_json(lemmas))
    return out


def _cohomology_text(spec: AlgebraSpec, report: CohomologyReport) -> list[str]:
    lemmas, reps = _decorate_representative(spec, report)
    lines = [
        f"algebra: {report.algebra}",
        f"window: {report.window}",
        f"inner: {report.inner}",
        f"degree: {report.degree}",
        f"mode: {report.mode}",
        f"dim_cocycle: {report.dim_cocycle}",
        f"dim_coboundary: {report.dim_coboundary}",
        f"dim_cohomology_inner: {report.dim_cohomology}",
        f"skipped_triples: {report.skipped_triples}",
    ]
    if lemmas is not None:
        verdicts = " ".join(
            f"{v.name}={'pass' if v.passed else 'fail'}" for v in lemmas.verdicts
        )
        lines.append(f"lemma_verdicts: {verdicts}")
        lines.append(f"c: {lemmas.c if lemmas.c is not None else 'none'}")
    for i, rep in enumerate(reps, 1):
        lines.append(f"representative {i}:")
        lines.extend(_form_text(rep))
    return lines


_SCAN_HEADER = "window,inner,dim_cocycle,dim_coboundary,dim_cohomology_inner"


def emit_report(report, fmt: str = "text") -> str:
    """Deterministic serialization of any report object this CLI produces."""
    if isinstance(report, ScanTable):
        if fmt == "csv":
            lines = [_SCAN_HEADER]
            for r in report.rows:
                lines.append(
                    f"{r.window},{r.inner},{r.dim_cocycle},{r.dim_coboundary},{r.dim_cohomology}"
                )
            return "\n".join(lines) + "\n"
        if fmt == "json":
            return json.dumps(
                {
                    "algebra": report.algebra,
                    "degree": report.degree,
                    "mode": report.mode,
                    "rows": [
                        {
                            "window": r.window,
                            "inner": r.inner,
                            "dim_cocycle": r.dim_cocycle,
                            "dim_coboundary": r.dim_coboundary,
                            "dim_cohomology_inner": r.dim_cohomology,
                        }
                        for r in report.rows
                    ],
                },
                indent=2,
            ) + "\n"
        lines = [f"algebra: {report.algebra}", f"degree: {report.degree}", f"mode: {report.mode}"]
        lines.append(_SCAN_HEADER.replace(",", "  "))
        for r in report.rows:
            lines.append(
                f"{r.window:6d}  {r.inner:5d}  {r.dim_cocycle:11d}  {r.dim_coboundary:14d}  {r.dim_cohomology:19d}"
            )
        return "\n".join(lines) + "\n"

    if isinstance(report, LemmaReport):
        if fmt == "json":
            return json.dumps(_lemma_json(report), indent=2) + "\n"
        if fmt == "csv":
            lines = ["check,verdict"]
            for v in report.verdicts:
                lines.append(f"{v.name},{'pass' if v.passed else 'fail'}")
            return "\n".join(lines) + "\n"
        lines = [
            f"{v.name}: {'pass' if v.passed else 'fail'}" for v in report.verdicts
        ]
        lines.append(f"c: {report.c if report.c is not None else 'none'}")
        return "\n".join(lines) + "\n"

    raise TypeError(f"cannot serialize {type(report).__name__}")


def load_spec(source: str) -> AlgebraSpec:
    """Resolve --spec: a preset name, otherwise a rule-file path."""
    if source in PRESETS:
        return preset_spec(source)
    path = Path(source)
    if not path.is_file():
        raise ConfigError(f"spec source {source!r} is neither a preset nor a readable file")
    return parse_algebra(path.read_text(encoding="utf-8"))


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _run_check(cfg: RunConfig, spec: AlgebraSpec) -> int:
    report = check_leibniz(spec, cfg.window[0])
    if cfg.fmt == "json":
        payload = {
            "algebra": spec.name,
            "window": cfg.window[0],
            "violations": [
                {
                    "triple": [[e.family, e.index] for e in triple],
                    "left": repr(left),
                    "right": repr(right),
                }
                for triple, left, right in report.violations
            ],
            "checked": report.checked,
            "skipped": report.skipped,
        }
        text = json.dumps(payload, indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = (
            "algebra,window,violations,checked,skipped\n"
            f"{spec.name},{cfg.window[0]},{len(report.violations)},{report.checked},{report.skipped}\n"
        )
    else:
        lines = [
            f"{len(report.violations)} violations, {report.checked} triples checked, "
            f"{report.skipped} skipped"
        ]
        for triple, left, right in report.violations[:20]:
            lines.append(f"  {tuple(triple)}: left {left!r} vs right {right!r}")
        if len(report.violations) > 20:
            lines.append(f"  ... and {len(report.violations) - 20} more")
        text = "\n".join(lines) + "\n"
    _write(text, cfg.out)
    return EXIT_OK if report.ok else EXIT_FAILED


def _run_cocycles(cfg: RunConfig, spec: AlgebraSpec) -> int:
    sections = []
    for d in cfg.degrees:
        basis = cocycle_space(spec, cfg.window[0], d, cfg.mode)
        sections.append((d, basis))
    if cfg.fmt == "json":
        payload = [
            {
                "algebra": spec.name,
                "window": cfg.window[0],
                "degree": d,
                "mode": cfg.mode,
                "dim_cocycle": len(basis),
                "basis": [_form_json(b) for b in basis],
            }
            for d, basis in sections
        ]
        text = json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n"
    elif cfg.fmt == "csv":
        lines = ["algebra,window,degree,mode,dim_cocycle"]
        for d, basis in sections:
            lines.append(f"{spec.name},{cfg.window[0]},{d},{cfg.mode},{len(basis)}")
        text = "\n".join(lines) + "\n"
    else:
        lines = []
        for d, basis in sections:
            lines.append(
                f"algebra {spec.name}, window {cfg.window[0]}, degree {d}, mode {cfg.mode}: "
                f"dim_cocycle = {len(basis)}"
            )
            for i, b in enumerate(basis, 1):
                lines.append(f"basis form {i}:")
                lines.extend(_form_text(b))
        text = "\n".join(lines) + "\n"
    _write(text, cfg.out)
    return EXIT_OK


def _run_cohomology(cfg: RunConfig, spec: AlgebraSpec) -> int:
    n = cfg.window[0]
    inner = cfg.inner if cfg.inner is not None else n // 2
    reports = [cohomology(spec, n, d, cfg.mode, inner) for d in cfg.degrees]
    if cfg.fmt == "json":
        payload = [_cohomology_json(spec, r) for r in reports]
        text = json.dumps(payload[0] if len(payload) == 1 else payload, indent=2) + "\n"
    elif cfg.fmt == "csv":
        lines = [
            "algebra,window,inner,degree,mode,dim_cocycle,dim_coboundary,"
            "dim_cohomology_inner,skipped_triples"
        ]
        for r in reports:
            lines.append(
                f"{r.algebra},{r.window},{r.inner},{r.degree},{r.mode},"
                f"{r.dim_cocycle},{r.dim_coboundary},{r.dim_cohomology},{r.skipped_triples}"
            )
        text = "\n".join(lines) + "\n"
    else:
        chunks = ["\n".join(_cohomology_text(spec, r)) for r in reports]
        text = "\n\n".join(chunks) + "\n"
    _write(text, cfg.out)
    return EXIT_OK


def _run_scan(cfg: RunConfig, spec: AlgebraSpec) -> int:
    table = convergence_scan(spec, cfg.window, cfg.degrees[0], cfg.mode)
    _write(emit_report(table, cfg.fmt), cfg.out)
    return EXIT_OK


def _run_assert_paper(cfg: RunConfig) -> int:
    """Full verification pipeline on the twisted-sv preset."""
    spec = preset_spec("twisted-sv")
    steps: list[dict] = []

    leib = check_leibniz(spec, 12)
    steps.append(
        {
            "step": "leibniz-identity-window-12",
            "status": "pass" if leib.ok else "fail",
            "detail": f"{len(leib.violations)} violations, {leib.checked} checked, {leib.skipped} skipped",
        }
    )

    for n in (4, 6, 8):
        report = cohomology(spec, n, 0, "leibniz", n // 2)
        ok = report.dim_cohomology == 1 and report.representatives_normalized
        detail = (
            f"dims {report.dim_cocycle}/{report.dim_coboundary}/{report.dim_cohomology}"
        )
        if ok:
            lemmas = lemma_assertions(report.representatives[0], n // 2)
            ok = lemmas.all_pass and lemmas.c not in (None, 0)
            detail += f", lemma checks {'pass' if lemmas.all_pass else 'fail'}, c = {lemmas.c}"
        steps.append(
            {
                "step": f"virasoro-class-window-{n}",
                "status": "pass" if ok else "fail",
                "detail": detail,
            }
        )

    dims = []
    ok = True
    for d in (1, -1, 2, -2, 3, -3, 4, -4):
        r = cohomology(spec, 8, d, "leibniz", 4)
        dims.append(f"d={d}:{r.dim_cohomology}")
        ok = ok and r.dim_cohomology == 0
    steps.append(
        {
            "step": "nonzero-degree-triviality-window-8",
            "status": "pass" if ok else "fail",
            "detail": " ".join(dims),
        }
    )

    all_pass = all(s["status"] == "pass" for s in steps)
    if cfg.fmt == "json":
        text = json.dumps({"algebra": spec.name, "steps": steps, "all_pass": all_pass}, indent=2) + "\n"
    elif cfg.fmt == "csv":
        lines = ["step,status"]
        lines.extend(f"{s['step']},{s['status']}" for s in steps)
        text = "\n".join(lines) + "\n"
    else:
        lines = [f"{s['status'].upper():4s} {s['step']} ({s['detail']})" for s in steps]
        lines.append("all checks passed" if all_pass else "FAILURES present")
        text = "\n".join(lines) + "\n"
    _write(text, cfg.out)
    return EXIT_OK if all_pass else EXIT_FAILED


def run(cfg: RunConfig) -> int:
    """Execute a validated configuration; returns the process exit code."""
    if cfg.command == "assert-paper":
        return _run_assert_paper(cfg)
    spec = load_spec(cfg.spec_source)
    if cfg.command == "check":
        return _run_check(cfg, spec)
    if cfg.command == "cocycles":
        return _run_cocycles(cfg, spec)
    if cfg.command == "cohomology":
        return _run_cohomology(cfg, spec)
    if cfg.command == "scan":
        return _run_scan(cfg, spec)
    raise ConfigError(f"unknown command {cfg.command!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svh",
        description="Exact 2-cocycle and second-cohomology computations for "
        "integer-graded algebras given by bracket rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_spec=True):
        if need_spec:
            p.add_argument("--spec", required=True, help="preset name or rule-file path")
        p.add_argument(
            "--window",
            type=_int_list,
            required=need_spec,
            default=None,
            help="window bound N (scan accepts a comma-separated ascending list)",
        )
        p.add_argument("--inner", type=int, default=None, help="inner reporting bound M (default N//2)")
        p.add_argument("--degree", type=_int_list, default=[0], help="degree d, or comma-separated list")
        p.add_argument("--mode", choices=MODES, default="leibniz")
        p.add_argument("--out", default=None, help="write the report to this path instead of stdout")
        p.add_argument("--format", dest="fmt", choices=FORMATS, default="text")

    add_common(sub.add_parser("check", help="verify the Leibniz identity on a window"))
    add_common(sub.add_parser("cocycles", help="dimension and basis of the cocycle space"))
    add_common(sub.add_parser("cohomology", help="inner-window quotient of cocycles by coboundaries"))
    add_common(sub.add_parser("scan", help="cohomology dimensions across ascending windows"))
    ap = sub.add_parser("assert-paper", help="run the full verification suite on the twisted-sv preset")
    add_common(ap, need_spec=False)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            command=args.command,
            spec_source=getattr(args, "spec", "twisted-sv"),
            window=args.window if args.window is not None else [0],
            inner=args.inner,
            degrees=args.degree,
            mode=args.mode,
            out=args.out,
            fmt=args.fmt,
        )
    except ConfigError as exc:
        print(f"svh: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return run(cfg)
    except (ParseError, UnknownFamily) as exc:
        print(f"svh: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConfigError, InnerBoundExceedsWindow) as exc:
        print(f"svh: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SvhError as exc:
        print(f"svh: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
