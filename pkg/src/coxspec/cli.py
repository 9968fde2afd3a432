"""Command-line front end: ``coxspec <command> <diagram> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .cartan import cartan_data, classify_tits
from .coxeter import coxeter_charpoly, series_graph, spectral_radius, spectral_radius_of, tpqr_series_charpoly
from .diagram import DiagramError, ValuedGraph, build_catalog, parse_graph, parse_orientation
from .exactmath import DomainError, IntPolynomial, factor_cyclotomic, render_polynomial
from .spectral import coxeter_numbers, jordan_structure, root_system_count

SCHEMA = 1
COMMANDS = ("charpoly", "spectrum", "jordan", "numbers", "roots", "defect", "regular",
            "poincare", "mckay", "slodowy", "orbit", "series", "tables")
GOLDEN_DIR = Path(__file__).with_name("goldens")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # one-line, machine-parsable
        raise UsageError(message)


@dataclass
class Output:
    text: list[str]
    data: dict


def _poly_json(p: IntPolynomial, ascii_only: bool, var: str = "λ") -> dict:
    return {"coefficients": list(reversed(p.coeffs)), "text": render_polynomial(p, var, ascii_only)}


def _load(args) -> ValuedGraph:
    if args.file:
        try:
            text = Path(args.file).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}")
        return parse_graph(text, name=Path(args.file).stem)
    if not args.diagram:
        raise UsageError("a diagram name or --file is required")
    return build_catalog(args.diagram)


def _tol(args) -> Fraction:
    try:
        tol = Fraction(args.tol)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--tol expects a rational number, got {args.tol!r}")
    if tol <= 0:
        raise UsageError("--tol must be positive")
    return tol


def _fmt_radius(x: float) -> str:
    return f"{x:.6f}"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_charpoly(args) -> Output:
    g = _load(args)
    p = coxeter_charpoly(g)
    return Output([render_polynomial(p, "λ", args.ascii)],
                  {"diagram": g.name, "charpoly": _poly_json(p, args.ascii)})


def cmd_spectrum(args) -> Output:
    g = _load(args)
    p = coxeter_charpoly(g)
    cyc, rem = factor_cyclotomic(p)
    rad = spectral_radius_of(p, _tol(args))
    form = classify_tits(cartan_data(g))
    text = [
        f"charpoly: {render_polynomial(p, 'λ', args.ascii)}",
        "cyclotomic: " + (", ".join(f"Φ{d}^{m}" if m > 1 else f"Φ{d}" for d, m in sorted(cyc.items())) or "none"),
        f"remainder: {render_polynomial(rem, 'λ', args.ascii)}",
        f"tits form: {form.kind} (signature {form.signature[0]}, {form.signature[1]}, {form.signature[2]})",
        f"spectral radius: {_fmt_radius(rad.value)}",
    ]
    data = {"diagram": g.name, "charpoly": _poly_json(p, args.ascii),
            "cyclotomic": {str(d): m for d, m in sorted(cyc.items())},
            "remainder": _poly_json(rem, args.ascii), "tits_form": form.kind,
            "signature": list(form.signature), "spectral_radius": _fmt_radius(rad.value),
            "radius_interval": [str(rad.low), str(rad.high)]}
    return Output(text, data)


def cmd_jordan(args) -> Output:
    g = _load(args)
    rep = jordan_structure(g)
    text = [f"kind: {rep.kind}", f"diagonal: {'yes' if rep.diagonal else 'no'}"]
    blocks = []
    for b in rep.blocks:
        text.append(f"{b.label}: multiplicity {b.multiplicity}, blocks {list(b.block_sizes)}")
        blocks.append({"factor": render_polynomial(b.factor, "λ", args.ascii), "label": b.label,
                       "multiplicity": b.multiplicity, "block_sizes": list(b.block_sizes)})
    return Output(text, {"diagram": g.name, "kind": rep.kind, "diagonal": rep.diagonal, "blocks": blocks})


def cmd_numbers(args) -> Output:
    g = _load(args)
    c = coxeter_numbers(g)
    text = [f"h: {c.h}", f"h_a: {c.h_a if c.h_a is not None else '-'}", f"h_dual: {c.h_dual}"]
    if c.exponents:
        text.append("exponents: " + " ".join(map(str, c.exponents)))
    if c.orders:
        text.append("eigenvalue orders: " + " ".join(map(str, c.orders)))
    return Output(text, {"diagram": g.name, "h": c.h, "h_a": c.h_a, "h_dual": c.h_dual,
                         "exponents": list(c.exponents), "orders": list(c.orders)})


def cmd_roots(args) -> Output:
    g = _load(args)
    r = root_system_count(g)
    text = [f"roots: {r.total}", f"positive: {r.positive}", f"rank: {r.rank}", f"h: {r.h}",
            f"h·rank = |roots|: {'yes' if r.hl_holds else 'no'}",
            "highest root: " + " ".join(f"{v}={c}" for v, c in zip(g.vertices, r.highest_root))]
    return Output(text, {"diagram": g.name, "roots": r.total, "positive": r.positive, "rank": r.rank,
                         "h": r.h, "hl_holds": r.hl_holds,
                         "highest_root": dict(zip(g.vertices, r.highest_root))})


def cmd_defect(args) -> Output:
    from .regularity import defect_form, dlab_ringel_defect

    g = _load(args)
    o = parse_orientation(g, args.orientation)
    rho = defect_form(g, o)
    delta, ratio = dlab_ringel_defect(g, o)
    text = [rho.render(args.ascii), f"fixed-form ratio: {ratio}"]
    return Output(text, {"diagram": g.name, "orientation": args.orientation or "bicolored",
                         "defect": rho.render(args.ascii), "coefficients": dict(rho.coefficients),
                         "fixed_form_ratio": str(ratio)})


def _vector(args, g: ValuedGraph) -> tuple[int, ...]:
    if not args.vector:
        raise UsageError("--vector is required")
    try:
        z = tuple(int(x) for x in args.vector.split(","))
    except ValueError:
        raise UsageError("--vector expects comma-separated integers")
    if len(z) != g.n:
        raise UsageError(f"--vector needs {g.n} entries in the order {','.join(g.vertices)}")
    return z


def cmd_regular(args) -> Output:
    from .regularity import indefinite_defects, is_regular

    g = _load(args)
    o = parse_orientation(g, args.orientation)
    z = _vector(args, g)
    form = classify_tits(cartan_data(g))
    if form.kind == "indefinite":
        r = indefinite_defects(g, o, z)
        verdict = "condition holds" if r.holds else "necessary condition fails"
        text = [f"rho1: {r.rho1:.12g}", f"rho2: {r.rho2:.12g}", f"verdict: {verdict}"]
        return Output(text, {"diagram": g.name, "vector": list(z), "rho1": repr(r.rho1), "rho2": repr(r.rho2),
                             "verdict": verdict})
    r = is_regular(g, o, z)
    text = [f"status: {r.status}", f"root: {r.root.kind}"]
    if r.defect is not None:
        text.append(f"defect: {r.defect}")
    if r.witness is not None:
        text.append(f"witness: C^{r.witness} z is not positive")
    return Output(text, {"diagram": g.name, "vector": list(z), "status": r.status, "root": r.root.kind,
                         "defect": None if r.defect is None else str(r.defect), "witness": r.witness,
                         "checked": r.checked})


def cmd_poincare(args) -> Output:
    from .mckay import ebeling_poincare

    g = _load(args)
    q = ebeling_poincare(g)
    n = args.truncate if args.truncate is not None else 30
    s = q.series(n)
    text = [f"quotient: ({render_polynomial(q.numerator, 'λ', args.ascii)}) / "
            f"({render_polynomial(q.denominator, 'λ', args.ascii)}), λ = t^2",
            "series: " + " ".join(map(str, s))]
    return Output(text, {"diagram": g.name, "affine": q.affine,
                         "numerator": _poly_json(q.numerator, args.ascii),
                         "denominator": _poly_json(q.denominator, args.ascii), "series": list(s)})


def cmd_mckay(args) -> Output:
    from .mckay import build_group, character_table, mckay_matrix, molien_series

    if not args.diagram:
        raise UsageError("a group name (Z/n, BD<n>, T, O, J) is required")
    G = build_group(args.diagram)
    t = character_table(G)
    r = mckay_matrix(t)
    n = args.truncate if args.truncate is not None else 30
    mol = molien_series(G, n)
    text = [f"group: {G.name} (order {G.order}, {len(G.classes)} classes)",
            "class sizes: " + " ".join(map(str, G.class_sizes)),
            "degrees: " + " ".join(map(str, t.degrees())),
            f"matched diagram: {r.diagram}",
            "McKay matrix:"]
    text += ["  " + " ".join(str(int(x)) for x in row) for row in r.matrix.tolist()]
    text.append("vertices: " + " ".join(f"{i}->{v}" for i, v in sorted(r.correspondence.items())))
    text.append("Molien series: " + " ".join(map(str, mol)))
    return Output(text, {"group": G.name, "order": G.order, "class_sizes": list(G.class_sizes),
                         "degrees": list(t.degrees()), "diagram": r.diagram,
                         "matrix": [[int(x) for x in row] for row in r.matrix.tolist()],
                         "correspondence": {str(i): v for i, v in sorted(r.correspondence.items())},
                         "molien": list(mol)})


def cmd_slodowy(args) -> Output:
    from .mckay import slodowy_matrices

    s = slodowy_matrices()
    text = [f"restricted ({', '.join(l + '↓' for l in s.restricted_labels)}) -> {s.diagram}:"]
    text += ["  " + " ".join(str(int(x)) for x in row) for row in s.A.tolist()]
    text.append(f"induced ({', '.join(l + '↑' for l in s.induced_labels)}) -> {s.diagram_dual}:")
    text += ["  " + " ".join(str(int(x)) for x in row) for row in s.A_dual.tolist()]
    if args.ascii:
        text = [line.replace("↓", "_down").replace("↑", "_up").replace("ρ", "rho").replace("τ", "tau")
                for line in text]
    return Output(text, {"A": [[int(x) for x in r] for r in s.A.tolist()],
                         "A_dual": [[int(x) for x in r] for r in s.A_dual.tolist()],
                         "diagram": s.diagram, "diagram_dual": s.diagram_dual,
                         "reciprocity": s.reciprocity})


def cmd_orbit(args) -> Output:
    from .mckay import orbit_assembling

    g = _load(args)
    o = orbit_assembling(g)
    text = ["vertices: " + " ".join(o.vertices), f"h: {o.h}"]
    for n, v in enumerate(o.orbit):
        text.append(f"tau^({n}) beta: " + " ".join(map(str, v)))
    for n, z in enumerate(o.assembling, start=1):
        text.append(f"z_{n}: " + " ".join(map(str, z)))
    for v in o.vertices:
        text.append(f"z(t)_{v}: {render_polynomial(o.numerators[v], 't', args.ascii)}")
    return Output(text, {"diagram": g.name, "vertices": list(o.vertices), "h": o.h,
                         "orbit": [list(v) for v in o.orbit], "assembling": [list(z) for z in o.assembling],
                         "numerators": {v: render_polynomial(o.numerators[v], "t", args.ascii) for v in o.vertices}})


def cmd_series(args) -> Output:
    fam = (args.diagram or "").upper()
    if fam not in ("T23", "T33", "T24"):
        raise UsageError("series expects T23, T33 or T24")
    if args.r is None:
        raise UsageError("--r is required")
    p = tpqr_series_charpoly(fam, args.r)
    text = [render_polynomial(p, "λ", args.ascii)]
    data = {"family": fam, "r": args.r, "charpoly": _poly_json(p, args.ascii)}
    if args.radius:
        rad = spectral_radius_of(p, _tol(args))
        text.append(_fmt_radius(rad.value))
        data["spectral_radius"] = _fmt_radius(rad.value)
    return Output(text, data)


# ---------------------------------------------------------------------------
# golden tables
# ---------------------------------------------------------------------------


def _table_dynkin(ascii_only: bool) -> list[str]:
    names = [f"A{n}" for n in range(1, 13)] + [f"B{n}" for n in range(2, 13)] + \
        [f"C{n}" for n in range(3, 13)] + [f"D{n}" for n in range(4, 13)] + ["E6", "E7", "E8", "F4", "G2"]
    return [f"{n}: {render_polynomial(coxeter_charpoly(build_catalog(n)), 'λ', ascii_only)}" for n in names]


EXTENDED = ("D4~", "D5~", "D6~", "D7~", "E6~", "E7~", "E8~", "B3~", "B4~", "C3~", "C4~", "BC3~",
            "CD4~", "CD5~", "DD4~", "DD5~", "F41~", "F42~", "G21~", "G22~", "A11~", "A12~")


def _table_extended(ascii_only: bool) -> list[str]:
    lines = []
    for n in EXTENDED:
        g = build_catalog(n)
        p = coxeter_charpoly(g)
        c = coxeter_numbers(g)
        lines.append(f"{n}: {render_polynomial(p, 'λ', ascii_only)} | orders {list(c.orders)} | "
                     f"h {c.h} h_a {c.h_a} h_dual {c.h_dual}")
    return lines


def _table_series(ascii_only: bool) -> list[str]:
    lines = []
    for fam, rs in (("T23", range(7, 11)), ("T33", range(4, 9)), ("T24", range(5, 9))):
        for r in rs:
            rad = spectral_radius_of(tpqr_series_charpoly(fam, r))
            lines.append(f"{fam} r={r}: {_fmt_radius(rad.value)}")
    return lines


def _table_defects(ascii_only: bool) -> list[str]:
    from .regularity import defect_form

    rows = (("D4~", "bicolored"), ("D4~", "flip:x0-y2"), ("D4~", "flip:x0-y2,x0-y3"),
            ("E6~", "bicolored"), ("E6~", "central"), ("G21~", "bicolored"), ("G21~", "flip:x1-y2"),
            ("G22~", "bicolored"), ("G22~", "flip:x1-y2"))
    out = []
    for n, o in rows:
        g = build_catalog(n)
        out.append(f"{n} {o}: {defect_form(g, parse_orientation(g, o)).render(ascii_only)}")
    return out


def _table_kostant(ascii_only: bool) -> list[str]:
    from .mckay import build_group, kostant_numbers_from_series, molien_series

    out = []
    for name in ("Z/6", "BD3", "T", "O", "J"):
        G = build_group(name)
        a, b, h = kostant_numbers_from_series(molien_series(G, 64))
        out.append(f"{name}: |G| {G.order} h {h} a {a} b {b}")
    return out


def _table_roots(ascii_only: bool) -> list[str]:
    out = []
    for n in ("A2", "D4", "E6", "E7", "E8"):
        r = root_system_count(build_catalog(n))
        out.append(f"{n}: roots {r.total} rank {r.rank} h {r.h}")
    from .spectral import rlh_check

    for n in ("A11~", "BC3~", "DD4~", "B3~", "F41~", "G21~"):
        c = rlh_check(build_catalog(n))
        out.append(f"{n}: r {c.r} rank {c.rank} h {c.h} {c.target} {c.roots}")
    return out


def _table_characters(ascii_only: bool) -> list[str]:
    from .mckay import build_group, cell_text, character_table, labelled_table

    out = []
    for name in ("O", "T"):
        G = build_group(name)
        labels, words, grid = labelled_table(character_table(G))
        sizes = [len(G.classes[G.class_of_word(w)]) for w in words]
        out.append(f"{name} classes: " + " | ".join(f"{w} ({s})" for w, s in zip(words, sizes)))
        for lab, row in zip(labels, grid):
            out.append(f"{lab}: " + " ".join(cell_text(x, ascii_only) for x in row))
    return out


def _table_slodowy(ascii_only: bool) -> list[str]:
    args = argparse.Namespace(ascii=ascii_only)
    return cmd_slodowy(args).text


def _table_orbit(ascii_only: bool) -> list[str]:
    args = argparse.Namespace(ascii=ascii_only, diagram="E6", file=None)
    return cmd_orbit(args).text


TABLES: dict[str, Callable[[bool], list[str]]] = {
    "characters": _table_characters,
    "defects": _table_defects,
    "dynkin": _table_dynkin,
    "extended": _table_extended,
    "kostant": _table_kostant,
    "orbit": _table_orbit,
    "roots": _table_roots,
    "series": _table_series,
    "slodowy": _table_slodowy,
}


def cmd_tables(args) -> Output:
    text, data = [], {}
    failures = 0
    for name in sorted(TABLES):
        body = "\n".join(TABLES[name](False)) + "\n"
        path = GOLDEN_DIR / f"{name}.txt"
        if args.write:
            path.parent.mkdir(exist_ok=True)
            path.write_text(body, encoding="utf-8")
            status = "written"
        elif not path.exists():
            status = "missing"
        else:
            status = "match" if path.read_text(encoding="utf-8") == body else "differs"
        failures += status in ("missing", "differs")
        text.append(f"{name}: {status}")
        data[name] = status
    out = Output(text, {"tables": data})
    out.data["ok"] = failures == 0
    return out


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="coxspec", description="Coxeter transformations of valued graphs.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("diagram", nargs="?", help="catalog name, group name or series family")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--ascii", action="store_true", help="ASCII-only rendering")
    p.add_argument("--tol", default="1/100000000", help="rational tolerance for radius isolation")
    p.add_argument("--orientation", default=None, help="bicolored, central, reversed, flip:u-v,… or arrows:u>v,…")
    p.add_argument("--truncate", type=int, default=None, help="series truncation order")
    p.add_argument("--file", default=None, help="read the graph from a DSL file")
    p.add_argument("--r", type=int, default=None, help="series parameter")
    p.add_argument("--radius", action="store_true", help="also print the spectral radius")
    p.add_argument("--vector", default=None, help="dimension vector for `regular`")
    p.add_argument("--write", action="store_true", help="`tables`: rewrite the golden files")
    return p


# Options each subcommand accepts besides --format and --ascii.
COMMAND_FLAGS = {
    "charpoly": {"diagram", "file"},
    "spectrum": {"diagram", "file", "tol"},
    "jordan": {"diagram", "file"},
    "numbers": {"diagram", "file"},
    "roots": {"diagram", "file"},
    "defect": {"diagram", "file", "orientation"},
    "regular": {"diagram", "file", "orientation", "vector"},
    "poincare": {"diagram", "file", "truncate"},
    "mckay": {"diagram", "truncate"},
    "slodowy": set(),
    "orbit": {"diagram", "file"},
    "series": {"diagram", "r", "radius", "tol"},
    "tables": {"write"},
}
assert set(COMMAND_FLAGS) == set(COMMANDS)


def _check_flags(parser: argparse.ArgumentParser, args) -> None:
    allowed = COMMAND_FLAGS[args.command] | {"command", "format", "ascii"}
    for name, value in sorted(vars(args).items()):
        if name not in allowed and value != parser.get_default(name):
            what = "a diagram argument" if name == "diagram" else f"--{name}"
            raise UsageError(f"{args.command} does not take {what}")


def render(out: Output, command: str, fmt: str) -> str:
    if fmt == "json":
        payload = {"schema": SCHEMA, "command": command, **out.data}
        return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    return "\n".join(out.text) + "\n"


def run(argv: list[str]) -> tuple[int, str, str]:
    """(exit status, stdout text, stderr text)."""
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        _check_flags(parser, args)
        if args.truncate is not None and args.truncate < 0:
            raise UsageError("--truncate must be nonnegative")
        out = HANDLERS[args.command](args)
    except UsageError as exc:
        return 2, "", f"coxspec: error[usage]: {exc}\n"
    except (DiagramError, DomainError) as exc:
        return 1, "", f"coxspec: error[domain]: {exc}\n"
    status = 0
    if args.command == "tables" and not out.data.get("ok", True):
        status = 1
    return status, render(out, args.command, args.format), ""


def main(argv: list[str] | None = None) -> int:
    status, out, err = run(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
