"""Batch verification of the family and deformation registries, rendered as reports.

Rows are assembled in registry order and contain no timings or paths, so a
report depends only on the RunConfig that produced it.
"""

from __future__ import annotations

import json
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from . import deformations as D
from .constructions import families as F
from .constructions.tables import identify
from .groebner import Ideal
from .homology import betti_table, hilbert_data
from .polyring import DEFAULT_CHAR, PolyRing, is_prime


def default_char() -> int:
    env = os.environ.get("GOR4_CHAR")
    return int(env) if env else DEFAULT_CHAR


@dataclass(frozen=True)
class RunConfig:
    char: int = DEFAULT_CHAR
    seed: int = 1
    samples: int = D.DEFAULT_SAMPLES
    outdir: str | None = None
    fmt: str = "markdown"
    jobs: int = 1

    def __post_init__(self):
        if not is_prime(self.char):
            raise ValueError(f"characteristic {self.char} is not prime")
        if self.seed < 1 or self.samples < 1:
            raise ValueError("seed and samples must be positive")
        if self.fmt not in ("json", "text", "markdown", "dot"):
            raise ValueError(f"unknown format {self.fmt!r}")


@dataclass
class FamilyRow:
    name: str
    degree: int | None = None
    genus: int | None = None
    betti: str | None = None
    expected: str | None = None
    status: str = "FAIL"
    diagnostic: str = ""


@dataclass
class DeformationRow:
    name: str
    source: str
    target: str
    kind: str
    identities: str = "FAIL"
    flatness: str = "FAIL"
    diagnostic: str = ""
    detail: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.identities == "PASS" and self.flatness == "PASS"


@dataclass
class Report:
    config: RunConfig
    families: list
    deformations: list

    @property
    def passed(self) -> bool:
        return (all(r.status == "PASS" for r in self.families)
                and all(r.passed for r in self.deformations))

    def environment(self) -> dict:
        return {"characteristic": self.config.char, "seed": self.config.seed,
                "samples": self.config.samples, "version": __version__}


# -- rows -------------------------------------------------------------------------

def family_row(name: str, cfg: RunConfig) -> tuple[FamilyRow, F.FamilyInstance | None]:
    fam = F.get_family(name)
    row = FamilyRow(name, expected=fam.betti)
    try:
        X = F.build_family(name, seed=cfg.seed, char=cfg.char)
    except F.GenericityError as e:
        row.diagnostic = str(e)
        return row, None
    return _fill(row, X.ideal), X


def _fill(row: FamilyRow, I: Ideal) -> FamilyRow:
    h = hilbert_data(I)
    B = betti_table(I)
    row.degree, row.genus, row.betti = h.degree, h.genus, identify(B)
    fam = F.get_family(row.name)
    bad = []
    if row.betti != fam.betti:
        bad.append(f"Betti table {row.betti or 'unlisted'}, expected {fam.betti}")
    if (h.degree, h.genus) != (fam.degree, fam.genus):
        bad.append(f"(degree, genus) = ({h.degree}, {h.genus}), expected ({fam.degree}, {fam.genus})")
    row.status = "FAIL" if bad else "PASS"
    row.diagnostic = "; ".join(bad)
    return row


def check_instance_file(path: str | Path) -> FamilyRow:
    """Re-derive the invariants of a stored instance (``family build -o``) and compare."""
    try:
        obj = json.loads(Path(path).read_text())
        name = obj["name"]
        R = PolyRing.from_header(obj["ring"])
        gens = [R.parse(g) for g in obj["generators"]]
    except (OSError, ValueError, KeyError, TypeError, SyntaxError) as e:
        return FamilyRow(str(path), diagnostic=f"unreadable instance: {e}")
    try:
        F.get_family(name)
    except KeyError as e:
        return FamilyRow(name, diagnostic=str(e.args[0]))
    return _fill(FamilyRow(name, expected=F.get_family(name).betti), Ideal(R, gens))


def deformation_row(name: str, cfg: RunConfig, X: F.FamilyInstance | None = None) -> DeformationRow:
    spec = D.get_spec(name)
    row = DeformationRow(spec.name, spec.source, spec.target, spec.kind)
    if X is None:
        try:
            X = F.build_family(spec.source, seed=cfg.seed, char=cfg.char)
        except F.GenericityError as e:
            row.diagnostic = f"source instance: {e}"
            return row
    ids = D.verify_identities(spec, X, cfg.samples)
    flat = D.verify_flatness(spec, X, cfg.samples)
    row.identities = "PASS" if ids.passed else "FAIL"
    row.flatness = "PASS" if flat.verdict else "FAIL"
    bad = [r.label for r in ids.results if not r.holds]
    notes = []
    if bad:
        notes.append("identities failing: " + "; ".join(bad))
    if ids.central_fiber is False:
        notes.append("central fibre differs from the source instance")
    if ids.target_format is False:
        notes.append("general fibre differs from the written target format")
    if not flat.hilbert_constant:
        notes.append("Hilbert polynomial not constant")
    notes += [f"{f.label} fibre at {list(f.point)} is {identify(f.betti) or 'unlisted'}, "
              f"expected {f.expected_table}" for f in flat.fibers if not f.table_ok]
    row.diagnostic = "; ".join(notes)
    row.detail = {"identities": ids.to_json(), "flatness": flat.to_json()}
    return row


# -- batch ------------------------------------------------------------------------

def _family_job(args):
    name, cfg = args
    row, X = family_row(name, cfg)
    return row, (X.to_json() if X is not None else None), (X.betti.render() if X and X.betti else None)


def _deformation_job(args):
    name, cfg = args
    return deformation_row(name, cfg)


def _map(fn, items, jobs):
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def run(cfg: RunConfig, pattern: str | None = None) -> Report:
    """Verify every registered family and deformation whose name matches ``pattern``."""
    rx = re.compile(pattern) if pattern else None
    keep = (lambda n: rx.search(n) is not None) if rx else (lambda n: True)
    fams = [n for n in F.family_names() if keep(n)]
    defs = [n for n in D.SPECS if keep(n)]
    fres = _map(_family_job, [(n, cfg) for n in fams], cfg.jobs)
    dres = _map(_deformation_job, [(n, cfg) for n in defs], cfg.jobs)
    rep = Report(cfg, [r for r, _, _ in fres], dres)
    if cfg.outdir:
        _write_tree(rep, fres, Path(cfg.outdir))
    return rep


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]+", "_", name).strip("_")


def _write_tree(rep: Report, fres, out: Path):
    for row, inst, betti in fres:
        d = out / "families" / _slug(row.name)
        d.mkdir(parents=True, exist_ok=True)
        if inst is not None:
            (d / "ideal.json").write_text(json.dumps(inst, indent=1, sort_keys=True) + "\n")
        if betti is not None:
            (d / "betti.txt").write_text(betti)
        (d / "report.json").write_text(json.dumps(asdict(row), indent=1, sort_keys=True) + "\n")
    for row in rep.deformations:
        d = out / "deformations" / _slug(row.name)
        d.mkdir(parents=True, exist_ok=True)
        (d / "report.json").write_text(json.dumps(asdict(row), indent=1, sort_keys=True) + "\n")
    (out / "report.md").write_text(render_markdown(rep))
    (out / "report.json").write_text(render_json(rep))


# -- rendering ----------------------------------------------------------------------

def render_markdown(rep: Report) -> str:
    env = rep.environment()
    out = ["# Gorenstein codimension four curves: verification report", "",
           f"characteristic {env['characteristic']}, seed {env['seed']}, "
           f"{env['samples']} sample points, gor4 {env['version']}", "",
           "## Families", "",
           "| family | degree | genus | Betti table | expected | status |",
           "|---|---|---|---|---|---|"]
    for r in rep.families:
        out.append(f"| {r.name} | {_c(r.degree)} | {_c(r.genus)} | {_c(r.betti)} | {r.expected} | {r.status} |")
    main = [r for r in rep.deformations if r.name in D.report_specs()]
    rest = [r for r in rep.deformations if r.name not in D.report_specs()]
    out += ["", "## Deformations", "",
            "| deformation | source | target | identities | flatness |", "|---|---|---|---|---|"]
    out += [f"| {r.name} | {r.source} | {r.target} | {r.identities} | {r.flatness} |" for r in main]
    if rest:
        out += ["", "## Specialisation arrows and variants", "",
                "| deformation | source | target | identities | flatness |", "|---|---|---|---|---|"]
        out += [f"| {r.name} | {r.source} | {r.target} | {r.identities} | {r.flatness} |" for r in rest]
    notes = [(r.name, r.diagnostic) for r in list(rep.families) + list(rep.deformations) if r.diagnostic]
    if notes:
        out += ["", "## Diagnostics", ""] + [f"- {n}: {d}" for n, d in notes]
    out += ["", f"overall: {'PASS' if rep.passed else 'FAIL'}", ""]
    return "\n".join(out)


def _c(v) -> str:
    return "-" if v is None else str(v)


def render_json(rep: Report) -> str:
    obj = {"environment": rep.environment(), "passed": rep.passed,
           "families": [asdict(r) for r in rep.families],
           "deformations": [asdict(r) for r in rep.deformations]}
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def render_text(rep: Report) -> str:
    lines = [f"{r.status:4}  family {r.name}" + (f"  ({r.diagnostic})" if r.diagnostic else "")
             for r in rep.families]
    lines += [f"{'PASS' if r.passed else 'FAIL':4}  deform {r.name}  identities {r.identities}, "
              f"flatness {r.flatness}" + (f"  ({r.diagnostic})" if r.diagnostic else "")
              for r in rep.deformations]
    lines.append(f"overall: {'PASS' if rep.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"
