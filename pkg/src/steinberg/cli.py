"""Command-line front end.

    steinberg roots A3
    steinberg constants F4
    steinberg collect A3 --sigma "e1-e2,e2-e3:pos" "x[1,-1,0,0](b) x[0,1,-1,0](c) ..."
    steinberg homotope demo --ring Z/6 --stage 2
    steinberg schur F4 Z/2
    steinberg verify-paper --system F4 --out report.json

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .collect import CollectionError, Letter, collect
from .polyring import PolyError, PolyRing, parse_poly
from .rootsys import Root, RootSystem, RootSystemError, build_root_system, special_cone

OUTPUT_DIR_ENV = "STEINBERG_OUTPUT_DIR"


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    system: tuple[str, ...] = ()
    ring: str | None = None
    out: Path | None = None
    convention: str | None = None
    verbosity: int = 0
    as_json: bool = False


# -- parsing helpers -------------------------------------------------------------------

_ROOT_RE = re.compile(r"x\[([^\]]*)\]\(([^()]*(?:\([^()]*\)[^()]*)*)\)")


def parse_root(text: str, phi: RootSystem) -> Root:
    """Either bracketed coordinates "[1,-1,0,0]" or e-notation like "e1-e2" or "1/2e1+1/2e2"."""
    t = text.replace(" ", "")
    if t.startswith("["):
        if not t.endswith("]"):
            raise UsageError(f"malformed root {text!r}")
        try:
            coords = tuple(Fraction(c) for c in t[1:-1].split(","))
        except ValueError:
            raise UsageError(f"malformed root {text!r}") from None
    else:
        coords = [Fraction(0)] * phi.dim
        terms = re.findall(r"([+-]?)(\d+(?:/\d+)?)?\*?e(\d+)", t)
        if not terms or "".join(s + (c or "") + "e" + i for s, c, i in terms).replace("*", "") != t.replace("*", ""):
            raise UsageError(f"malformed root {text!r}")
        for sign, coef, i in terms:
            k = int(i) - 1
            if not 0 <= k < phi.dim:
                raise UsageError(f"coordinate e{i} out of range for {phi.label}")
            v = Fraction(coef) if coef else Fraction(1)
            coords[k] += -v if sign == "-" else v
        coords = tuple(coords)
    root = Root(coords)
    if len(coords) != phi.dim or phi.find(root) is None:
        raise UsageError(f"{root} is not a root of {phi.label}")
    return root


def parse_sigma(text: str, phi: RootSystem):
    """'g1,g2,...[:pos|:strict]'; a generator may carry its own '>=0' or '>0'."""
    body, _, mode = text.partition(":")
    mode = mode.strip() or "pos"
    if mode not in ("pos", "strict"):
        raise UsageError(f"unknown cone mode {mode!r} (use pos or strict)")
    default = ">=0" if mode == "pos" else ">0"
    gens = []
    for part in _split_top(body):
        m = re.fullmatch(r"(.*?)(>=0|>0)?", part.strip())
        gens.append((parse_root(m.group(1), phi), m.group(2) or default))
    try:
        sigma = special_cone(phi, gens)
    except RootSystemError as e:
        raise UsageError(str(e)) from None
    return sigma


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [p for p in out if p.strip()]


def parse_word(text: str, phi: RootSystem, invertible: str = "") -> tuple[list[Letter], PolyRing]:
    pieces = list(_ROOT_RE.finditer(text))
    if "".join(m.group(0) for m in pieces).replace(" ", "") != text.replace(" ", ""):
        raise UsageError(f"malformed word {text!r}; expected letters like x[1,-1,0,0](b)")
    names = sorted({n for m in pieces for n in re.findall(r"[A-Za-z_]\w*", m.group(2))})
    inv = [n for n in invertible.replace(",", " ").split() if n]
    for n in inv:
        if n not in names:
            names.append(n)
    ring = PolyRing(names, invertible=inv)
    letters = []
    for m in pieces:
        inner = m.group(1)
        root = parse_root(inner if "e" in inner else "[" + inner + "]", phi)
        try:
            letters.append(Letter(root, parse_poly(m.group(2), ring)))
        except PolyError as e:
            raise UsageError(f"bad argument {m.group(2)!r}: {e}") from None
    return letters, ring


def _system(label: str) -> RootSystem:
    try:
        return build_root_system(label)
    except RootSystemError as e:
        raise UsageError(str(e)) from None


def _out_path(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


# -- subcommands ----------------------------------------------------------------------------

def cmd_roots(args, out) -> int:
    phi = _system(args.system)
    if args.json:
        json.dump(phi.to_json(), out)
        out.write("\n")
        return 0
    out.write(f"{phi.label}: {len(phi)} roots\n")
    for i, r in enumerate(phi.roots):
        kind = "long" if phi.is_long[i] else "short"
        out.write(f"{str(r):28s} height {phi.height[i]:3d}  {kind}\n")
    return 0


def cmd_constants(args, out) -> int:
    from .structconst import build_table, verify_identities
    table = build_table(_system(args.system))
    if args.json:
        json.dump(table.to_json(), out)
        out.write("\n")
        return 0
    out.write(f"# {table.system.label}, convention {table.convention}\n")
    for a, b, n, n21 in table.entries():
        extra = f"   N21 = {n21:+d}" if n21 is not None else ""
        out.write(f"N({a}, {b}) = {n:+d}{extra}\n")
    rep = verify_identities(table)
    out.write(f"# identities: {'pass' if rep.passed else 'FAIL'} "
              f"({rep.pairs_checked} pairs, {rep.triples_checked} triples)\n")
    return 0 if rep.passed else 1


def cmd_collect(args, out) -> int:
    from .structconst import build_table
    phi = _system(args.system)
    table = build_table(phi)
    sigma = parse_sigma(args.sigma, phi)
    word, _ = parse_word(" ".join(args.word), phi, args.invertible or "")
    try:
        nf = collect(phi, table, sigma, word, strategy=args.strategy)
    except CollectionError as e:
        raise UsageError(str(e)) from None
    if args.json:
        json.dump({"system": phi.label, "support": [phi.roots[k].to_json() for k in sorted(sigma.members)],
                   "normal_form": nf.to_json()}, out)
        out.write("\n")
    else:
        out.write(f"{nf}\n")
    return 0


def cmd_homotope(args, out) -> int:
    from .progroup import HomotopeError, homotope, parse_ring, ring_generation_check, structure_map
    if args.action != "demo":
        raise UsageError(f"unknown homotope action {args.action!r}")
    try:
        R = parse_ring(args.ring)
        s = R.normalize(_ring_literal(args.stage))
    except (HomotopeError, ValueError) as e:
        raise UsageError(str(e)) from None
    els = list(R.elements()) if R.elements() is not None and len(R.elements()) <= 8 else \
        [R.normalize(v) for v in range(-2, 4)]
    fmt = getattr(R, "format", str)
    table = [[fmt((homotope(R, a, s) * homotope(R, b, s)).value) for b in els] for a in els]
    gen = ring_generation_check(R, [s], els)
    ss = R.mul(s, s)
    struct = {fmt(a): fmt(structure_map(homotope(R, a, ss), s, factor=s).value) for a in els}
    if args.json:
        json.dump({"ring": R.name, "stage": fmt(s), "elements": [fmt(a) for a in els],
                   "product_table": table, "structure_map_from_stage_squared": struct,
                   "ring_generation": gen.to_json()}, out)
        out.write("\n")
        return 0 if gen.passed else 1
    w = max(len(x) for row in table for x in row + [fmt(a) for a in els]) + 1
    out.write(f"{R.name}^({fmt(s)}): a * b = (a s b)\n")
    out.write(" " * w + "|" + "".join(fmt(b).rjust(w) for b in els) + "\n")
    out.write("-" * (w + 1 + w * len(els)) + "\n")
    for a, row in zip(els, table):
        out.write(fmt(a).rjust(w) + "|" + "".join(x.rjust(w) for x in row) + "\n")
    out.write(f"structure map stage {fmt(ss)} -> {fmt(s)}: "
              + ", ".join(f"{k} -> {v}" for k, v in struct.items()) + "\n")
    out.write(f"section check m(u(c)) = (sc): {'pass' if gen.passed else 'FAIL'} ({gen.cases} cases)\n")
    return 0 if gen.passed else 1


def _ring_literal(text: str):
    t = text.strip()
    if "/" in t:
        return Fraction(t)
    if t.startswith("("):
        return tuple(int(v) for v in t.strip("()").split(","))
    return int(t)


def cmd_schur(args, out) -> int:
    from .verify import FiniteRingSpec, format_group, schur_multiplier
    try:
        ring = FiniteRingSpec.parse(args.ring)
        label = args.system.upper()
        res = schur_multiplier(label, ring)
    except (ValueError, RootSystemError) as e:
        raise UsageError(str(e)) from None
    if args.json:
        json.dump({"system": label, "ring": str(ring), "invariant_factors": res,
                   "group": format_group(res)}, out)
        out.write("\n")
    else:
        out.write(format_group(res) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    from .verify import run_all
    systems = []
    for s in args.system or ["A3", "D4", "F4"]:
        systems.extend(p for p in s.replace(",", " ").split() if p)
    for s in systems:
        _system(s)
    mutate = False
    if args.mutate is not None:
        if args.mutate == "":
            mutate = True
        else:
            if len(systems) != 1:
                raise UsageError("--mutate with a root pair needs exactly one system")
            phi = _system(systems[0])
            parts = args.mutate.split(";")
            if len(parts) != 2:
                raise UsageError("--mutate expects 'alpha;beta'")
            mutate = (parse_root(parts[0], phi), parse_root(parts[1], phi))
    report = run_all(systems, mutate=mutate, include_schur=not args.no_schur)
    text = json.dumps(report, indent=1)
    path = _out_path(args.out)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text + "\n")
    if args.json:
        out.write(text + "\n")
    else:
        for c in report["checks"]:
            n = c["configuration"].get("cases", "")
            out.write(f"{c['status'].upper():4s}  {c['check_id']}  ({n} cases)\n")
        for f in report.get("findings", []):
            out.write(f"finding: {f['topic']} in {f['system']}\n")
            for r in f.get("printed_sign_results", []):
                out.write(f"  printed sign: {r['check_id']} {r['status']} ({r['failures']}/{r['cases']} fail)\n")
        s = report["summary"]
        out.write(f"{s['pass']} passed, {s['fail']} failed\n")
        if path is not None:
            out.write(f"report written to {path}\n")
    return 0 if report["summary"]["fail"] == 0 else 1


# -- dispatch -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="steinberg", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("-v", "--verbose", action="count", default=0)
        sp.set_defaults(func=fn)
        return sp

    sp = add("roots", cmd_roots, "list the roots of a system")
    sp.add_argument("system")
    sp = add("constants", cmd_constants, "print the structure constants N_{alpha,beta}")
    sp.add_argument("system")
    sp = add("collect", cmd_collect, "collect a word over a special cone")
    sp.add_argument("system")
    sp.add_argument("--sigma", required=True, help='cone generators, e.g. "e1-e2,e2-e3:pos"')
    sp.add_argument("--strategy", choices=["leftmost", "lowest"], default="leftmost")
    sp.add_argument("--invertible", default="", help="variables allowed negative powers")
    sp.add_argument("word", nargs="+")
    sp = add("homotope", cmd_homotope, "homotope rng demo")
    sp.add_argument("action", choices=["demo"])
    sp.add_argument("--ring", default="Z")
    sp.add_argument("--stage", default="2")
    sp = add("schur", cmd_schur, "Schur multiplier of St(system, R) for finite R")
    sp.add_argument("system")
    sp.add_argument("ring", help="Z/n or a product such as Z/2xZ/3")
    sp = add("verify-paper", cmd_verify, "run the verification suite")
    sp.add_argument("--system", action="append", help="system label(s); default A3 D4 F4")
    sp.add_argument("--out", help=f"write the JSON report here (relative to ${OUTPUT_DIR_ENV} if set)")
    sp.add_argument("--mutate", nargs="?", const="", default=None,
                    help="flip one orbit of signs first; optionally 'alpha;beta'")
    sp.add_argument("--no-schur", action="store_true", help="skip the Schur multiplier checks")
    return p


def dispatch(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        return args.func(args, out)
    except UsageError as e:
        err.write(f"error: {e}\n")
        parser.print_usage(err)
        return 2


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
