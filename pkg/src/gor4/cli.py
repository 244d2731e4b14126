"""Command line front end: ``gor4 family|gb|betti|hilbert|colon|deform|report``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import deformations as D
from . import report as RP
from .constructions import families as F
from .constructions.tables import identify
from .groebner import Ideal, colon, minimal_generators
from .homology import betti_table, hilbert_data
from .polyring import PolyRing, format_poly, is_prime

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _char(v: str) -> int:
    c = int(v)
    if not is_prime(c):
        raise argparse.ArgumentTypeError(f"{c} is not prime")
    return c


def _positive(v: str) -> int:
    n = int(v)
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _common(p: argparse.ArgumentParser, samples: bool = False):
    p.add_argument("--char", type=_char, default=None, help="field characteristic (default $GOR4_CHAR or 32003)")
    p.add_argument("--seed", type=_positive, default=1)
    if samples:
        p.add_argument("--samples", type=_positive, default=D.DEFAULT_SAMPLES)


def _load_ideal(path: str) -> Ideal:
    """An ideal file (``gb``/``colon`` output) or an instance file from ``family build``."""
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read {path}: {e}") from None
    try:
        R = PolyRing.from_header(obj["ring"])
        gens = obj["generators"]
        if gens and isinstance(gens[0], str):
            return Ideal(R, [R.parse(g) for g in gens])
        return Ideal.from_json(json.dumps(obj))
    except (KeyError, TypeError, ValueError, SyntaxError) as e:
        raise UsageError(f"{path} is not an ideal file: {e}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- family ----------------------------------------------------------------------------

def cmd_family(a) -> int:
    if a.action == "list":
        for n in F.family_names():
            fam = F.get_family(n)
            print(f"{n:12} {fam.betti:9} degree {fam.degree}  {fam.summary}")
        return EXIT_OK
    if not a.name:
        raise UsageError("family build needs a family name")
    try:
        F.get_family(a.name)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    try:
        X = F.build_family(a.name, seed=a.seed, ambient_override=a.ambient, char=a.char)
    except F.GenericityError as e:
        print(str(e), file=sys.stderr)
        print("seeds tried: " + " ".join(map(str, e.seeds)), file=sys.stderr)
        return EXIT_FAIL
    except ValueError as e:
        raise UsageError(str(e)) from None
    h = hilbert_data(X.ideal)
    B = X.betti or betti_table(X.ideal)
    if a.output:
        Path(a.output).write_text(json.dumps(X.to_json(), indent=1, sort_keys=True) + "\n")
    print(f"{X.name}  seed {X.seed}  ring {', '.join(X.ring.names)}")
    if X.section is not None:
        print(f"ambient P^{len(X.ambient_ring.graded) - 1} with {len(X.ambient_ideal.generators)} generators, "
              f"cut to P^{len(X.ring.graded) - 1}")
    print(B.render(), end="")
    print(f"Betti table {identify(B) or 'unlisted'}")
    print(f"dimension {h.dimension - 1}, degree {h.degree}, genus {h.genus}")
    return EXIT_OK


# -- kernel commands ---------------------------------------------------------------------

def cmd_gb(a) -> int:
    I = _load_ideal(a.ideal)
    G = I.groebner()
    if a.json:
        _emit(Ideal(I.ring, G).to_json() + "\n", a.output)
    else:
        _emit("".join(format_poly(g) + "\n" for g in G), a.output)
    return EXIT_OK


def cmd_betti(a) -> int:
    B = betti_table(_load_ideal(a.ideal))
    _emit(B.render() + f"name: {identify(B) or 'unlisted'}\n", a.output)
    return EXIT_OK


def cmd_hilbert(a) -> int:
    h = hilbert_data(_load_ideal(a.ideal))
    _emit(f"Hilbert polynomial: {h.hp_string()}\ndimension {h.dimension - 1}, degree {h.degree}, "
          f"genus {h.genus}\n", a.output)
    return EXIT_OK


def cmd_colon(a) -> int:
    I, J = _load_ideal(a.ideal), _load_ideal(a.by)
    if I.ring != J.ring:
        raise UsageError("the two ideals live in different rings")
    C = Ideal(I.ring, minimal_generators(colon(I, J)))
    _emit(C.to_json() + "\n" if a.json else "".join(format_poly(g) + "\n" for g in C.generators), a.output)
    return EXIT_OK


# -- deform ----------------------------------------------------------------------------

def _spec(name: str) -> D.DeformationSpec:
    try:
        return D.get_spec(name)
    except KeyError as e:
        raise UsageError(e.args[0]) from None


def cmd_deform(a) -> int:
    if a.action == "graph":
        _emit(D.incidence_graph().to_dot(), a.output)
        return EXIT_OK
    if a.action == "list":
        for n, s in D.SPECS.items():
            print(f"{n:20} {s.source:11} -> {s.target:9} {s.kind:14} {s.summary}")
        return EXIT_OK
    cfg = _config(a)
    if a.action == "verify":
        if not a.name:
            raise UsageError("deform verify needs a deformation name")
        _spec(a.name)
        row = RP.deformation_row(a.name, cfg)
        text = json.dumps({"name": row.name, "identities": row.identities, "flatness": row.flatness,
                           "diagnostic": row.diagnostic, "detail": row.detail}, indent=1, sort_keys=True) + "\n"
        if a.output:
            Path(a.output).write_text(text)
        if a.json:
            sys.stdout.write(text)
        else:
            _print_row(row)
        return EXIT_OK if row.passed else EXIT_FAIL
    # verify-all
    rep = RP.run(cfg)
    sys.stdout.write(RP.render_text(rep))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _print_row(row: RP.DeformationRow):
    print(f"{row.name}: {row.source} -> {row.target} ({row.kind})")
    ids = row.detail["identities"]
    print(f"  central fibre equals source: {ids['central_fiber']}")
    if ids["target_format"] is not None:
        print(f"  general fibre equals written target format: {ids['target_format']}")
    for r in ids["identities"]:
        tag = "" if r["displayed"] else " (corrected/auxiliary)"
        print(f"  [{'ok' if r['holds'] else 'FAIL'}] {r['label']}{tag}")
    for f in row.detail["flatness"]["fibers"]:
        b = identify(_table(f["betti"])) or "unlisted"
        print(f"  fibre {f['label']:20} at {f['point']}: {f['hilbert_polynomial']}, {b}"
              f"{'' if f['table_ok'] else ', expected ' + str(f['expected_table'])}")
    print(f"  identities {row.identities}, flatness {row.flatness}")


def _table(obj):
    from .homology import BettiTable
    return BettiTable.from_json(obj)


# -- report ----------------------------------------------------------------------------

def _config(a) -> RP.RunConfig:
    fmt = getattr(a, "format", "markdown")
    return RP.RunConfig(char=a.char or RP.default_char(), seed=a.seed, samples=getattr(a, "samples", 3),
                        outdir=getattr(a, "outdir", None), fmt=fmt, jobs=getattr(a, "jobs", 1))


def cmd_report(a) -> int:
    cfg = _config(a)
    rep = RP.run(cfg, a.filter)
    render = {"markdown": RP.render_markdown, "json": RP.render_json, "text": RP.render_text}[cfg.fmt]
    _emit(render(rep), a.output)
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_check(a) -> int:
    row = RP.check_instance_file(a.instance)
    print(f"{row.status}  {row.name}" + (f"  ({row.diagnostic})" if row.diagnostic else ""))
    return EXIT_OK if row.status == "PASS" else EXIT_FAIL


# -- parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gor4", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    fp = sub.add_parser("family", help="list families or build a random instance")
    fp.add_argument("action", choices=("build", "list"))
    fp.add_argument("name", nargs="?")
    _common(fp)
    fp.add_argument("--ambient", type=int, default=None, help="number of variables kept by the linear section")
    fp.add_argument("-o", "--output", help="write the instance as JSON")
    fp.set_defaults(func=cmd_family)

    for name, fn, hlp in (("gb", cmd_gb, "reduced Groebner basis"), ("betti", cmd_betti, "graded Betti table"),
                          ("hilbert", cmd_hilbert, "Hilbert polynomial, degree and genus")):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("ideal", help="ideal or instance JSON file")
        sp.add_argument("-o", "--output")
        if name == "gb":
            sp.add_argument("--json", action="store_true")
        sp.set_defaults(func=fn)

    cp = sub.add_parser("colon", help="minimal generators of (I : J)")
    cp.add_argument("ideal")
    cp.add_argument("by")
    cp.add_argument("--json", action="store_true")
    cp.add_argument("-o", "--output")
    cp.set_defaults(func=cmd_colon)

    dp = sub.add_parser("deform", help="verify deformations or draw the incidence graph")
    dp.add_argument("action", choices=("verify", "verify-all", "graph", "list"))
    dp.add_argument("name", nargs="?")
    _common(dp, samples=True)
    dp.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    dp.add_argument("--jobs", type=_positive, default=1)
    dp.add_argument("--outdir", help="verify-all: write one directory per family and deformation")
    dp.add_argument("-o", "--output")
    dp.set_defaults(func=cmd_deform)

    rp = sub.add_parser("report", help="full verification report")
    _common(rp, samples=True)
    rp.add_argument("--format", choices=("markdown", "json", "text"), default="markdown")
    rp.add_argument("--filter", default=None, help="only entries whose name matches this regular expression")
    rp.add_argument("--jobs", type=_positive, default=1)
    rp.add_argument("--outdir")
    rp.add_argument("-o", "--output")
    rp.set_defaults(func=cmd_report)

    kp = sub.add_parser("check", help="re-verify a stored instance file")
    kp.add_argument("instance")
    kp.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    if getattr(a, "char", None) is None and hasattr(a, "char"):
        try:
            a.char = _char(str(RP.default_char()))
        except argparse.ArgumentTypeError as e:
            print(f"gor4: GOR4_CHAR: {e}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return a.func(a)
    except UsageError as e:
        print(f"gor4: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
