"""Command line front end: fan documents, commands and deterministic reports.

A fan document is line oriented::

    # four quadrants
    dim 2
    field q
    box 3
    cone I: (1,0) (0,1)
    cone II: (0,1) (-1,0)
    monoid I: (1,0) (0,1)

``dim`` is required; ``field`` and ``box`` are optional defaults that the
command line flags override.  ``monoid`` lines give generators of the monoid
on a named cone; without any, the normal complex is used.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .catalog import trivial_fan
from .cohomology import hochster_table, mayer_vietoris_check
from .errors import NotAFan, NotNormal, NotPointed, ParseError, SearchBudgetExceeded, ToricFaceError, ValidationError
from .field import QQ, FieldSpec
from .geometry import Cone, Fan, cone_from_generators, fan_from_maximal
from .gorenstein import euler_data, gorenstein_decide, is_euler_fan
from .lattice import MonoidalComplex, complex_from_generators, normal_complex, validate_monoidal_complex
from .ring import find_admissible_grading, hilbert_table
from .shelling import find_shelling

COMMANDS = ("validate", "fvector", "hilbert", "cohomology", "cm", "gorenstein", "shell", "euler", "mv-check", "grading")

_VEC = re.compile(r"\(\s*-?\d+(?:\s*,\s*-?\d+)*\s*\)")
_NAME = re.compile(r"[A-Za-z0-9_.+-]+")


@dataclass
class FanDocument:
    dim: int
    cones: dict = field(default_factory=dict)
    monoids: dict = field(default_factory=dict)
    field: FieldSpec = QQ
    box: int = 3

    def fan(self) -> Fan:
        if not self.cones:
            return trivial_fan(self.dim)
        built = {name: cone_from_generators(gens, self.dim) for name, gens in self.cones.items()}
        try:
            return fan_from_maximal(list(built.values()), self.dim)
        except NotAFan as exc:
            names = [self.name_of(c) for c in exc.pair] if exc.pair else []
            raise ValidationError(f"cones {names[0]} and {names[1]} do not meet in a common face") from exc

    def name_of(self, c: Cone) -> str:
        for name, gens in self.cones.items():
            if cone_from_generators(gens, self.dim) == c:
                return name
        return cone_label(c)

    def complex(self) -> MonoidalComplex:
        f = self.fan()
        if not self.monoids:
            return normal_complex(f)
        gens = {}
        for name, g in self.monoids.items():
            gens[f.index(cone_from_generators(self.cones[name], self.dim))] = g
        return complex_from_generators(f, gens)


def _parse_vectors(text: str, lineno: int, offset: int, d: int | None) -> list[tuple[int, ...]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _VEC.match(text, pos)
        if not m:
            raise ParseError("expected an integer vector like (1,0)", lineno, offset + pos + 1)
        vec = tuple(int(x) for x in m.group(0)[1:-1].split(","))
        if d is not None and len(vec) != d:
            raise ParseError(f"vector has {len(vec)} entries, expected {d}", lineno, offset + pos + 1)
        out.append(vec)
        pos = m.end()
    return out


def parse_fan_document(text: str) -> FanDocument:
    d = None
    cones: dict = {}
    monoids: dict = {}
    fld = QQ
    box = 3
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        key, _, rest = stripped.partition(" ")
        rest_col = indent + len(key) + 2
        if key in ("dim", "box"):
            value = rest.strip()
            if not value.isdigit():
                raise ParseError(f"{key} expects a nonnegative integer", lineno, rest_col)
            if key == "dim":
                d = int(value)
            else:
                box = int(value)
        elif key == "field":
            try:
                fld = FieldSpec.parse(rest.strip())
            except ValueError as exc:
                raise ParseError(str(exc), lineno, rest_col) from None
        elif key in ("cone", "monoid"):
            if d is None:
                raise ParseError("dim must be declared before cones", lineno, indent + 1)
            name, colon, vecs = rest.partition(":")
            name = name.strip()
            if not colon or not _NAME.fullmatch(name):
                raise ParseError("expected 'NAME: vectors'", lineno, rest_col)
            vec_col = rest_col + len(rest) - len(vecs)
            gens = _parse_vectors(vecs, lineno, vec_col - 1, d)
            if not gens:
                raise ParseError("at least one vector is needed", lineno, vec_col)
            if key == "cone":
                if name in cones:
                    raise ParseError(f"cone {name} declared twice", lineno, rest_col)
                if any(not any(v) for v in gens):
                    raise ParseError("zero vector among cone generators", lineno, vec_col)
                cones[name] = gens
            else:
                if name not in cones:
                    raise ParseError(f"monoid for undeclared cone {name}", lineno, rest_col)
                monoids[name] = gens
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno, indent + 1)
    if d is None:
        raise ParseError("missing 'dim' line", 1, 1)
    for name, gens in cones.items():
        try:
            cone_from_generators(gens, d)
        except NotPointed as exc:
            raise ValidationError(f"cone {name} is not pointed") from exc
    doc = FanDocument(d, cones, monoids, fld, box)
    doc.fan()
    return doc


# -- reports --------------------------------------------------------------------

@dataclass
class Report:
    text: str
    data: dict
    exit_code: int = 0

    def render(self, as_json: bool = False) -> str:
        if as_json:
            return json.dumps(self.data, sort_keys=True, indent=2)
        return self.text


def fmt_vec(v: Sequence) -> str:
    return "(" + ",".join(str(int(x)) for x in v) + ")"


def fmt_degree(v: Sequence) -> str:
    return "0" if not any(v) else fmt_vec(v)


def cone_label(c: Cone) -> str:
    if c.dim == 0:
        return "0"
    return "<" + " ".join(fmt_vec(r) for r in c.generators) + ">"


def _require_normal(doc: FanDocument, cmd: str):
    if doc.monoids:
        mc = doc.complex()
        if not mc.is_normal:
            raise NotNormal(f"'{cmd}' is implemented for normal complexes only")


def run_command(
    cmd: str,
    doc: FanDocument,
    field: FieldSpec | None = None,
    box: int | None = None,
    budget: int | None = None,
    split: Sequence[str] | None = None,
) -> Report:
    if cmd not in COMMANDS:
        raise ValueError(f"unknown command {cmd!r}")
    fld = field or doc.field
    radius = doc.box if box is None else box
    f = doc.fan()
    handler = _HANDLERS[cmd]
    if cmd in ("cohomology", "cm", "gorenstein", "mv-check"):
        _require_normal(doc, cmd)
    return handler(doc, f, fld, radius, budget, split)


def _validate(doc, f, fld, radius, budget, split):
    mc = doc.complex()
    rep = validate_monoidal_complex(mc, radius)
    pure = f.is_pure()
    lines = [f"valid fan: d={f.ambient}, {len(f)} cones, {len(f.maximal)} maximal, dim {f.dim}, {'pure' if pure else 'not pure'}"]
    kind = "normal" if mc.is_normal else "generated"
    status = "valid" if rep.valid else "invalid"
    lines.append(f"monoidal complex: {kind}, {status} ({rep.scope})")
    for ci, a, msg in rep.violations:
        lines.append(f"  violation: {msg}" + (f" at {fmt_vec(a)}" if a is not None else ""))
    data = {
        "ambient": f.ambient,
        "cones": len(f),
        "maximal": len(f.maximal),
        "dim": f.dim,
        "pure": pure,
        "normal": mc.is_normal,
        "valid": rep.valid,
        "scope": rep.scope,
    }
    code = 1 if not rep.valid else (0 if rep.exact else 2)
    return Report("\n".join(lines), data, code)


def _fvector(doc, f, fld, radius, budget, split):
    fv = f.f_vector()
    return Report("f-vector: " + " ".join(map(str, fv)), {"f_vector": fv})


def _hilbert(doc, f, fld, radius, budget, split):
    table = hilbert_table(doc.complex(), radius)
    supp = table.support()
    total = len(table.entries)
    lines = [f"Hilbert table on radius {radius} box: {len(supp)} of {total} degrees in the support"]
    lines += [f"{fmt_vec(a)} 1" for a in supp]
    data = {"radius": radius, "count": len(supp), "total": total, "support": [list(a) for a in supp]}
    return Report("\n".join(lines), data)


def _cohomology(doc, f, fld, radius, budget, split):
    t = hochster_table(f, fld)
    lines = [f"dim {t.dim}, depth {t.depth}"]
    entries = []
    for i, ci, v in t.nonzero():
        label = doc.name_of(f.cones[ci])
        lines.append(f"H^{i}_m: dimension {v} in each degree of -relint {label}")
        entries.append({"i": i, "cone": label, "dim": v, "generators": [list(r) for r in f.cones[ci].generators]})
    return Report("\n".join(lines), {"dim": t.dim, "depth": t.depth, "field": str(fld), "entries": entries})


def _cm(doc, f, fld, radius, budget, split):
    t = hochster_table(f, fld)
    if t.cm:
        text = f"Cohen–Macaulay: depth {t.depth} = dim {t.dim}"
        return Report(text, {"cm": True, "depth": t.depth, "dim": t.dim, "field": str(fld)})
    i, a, v = t.witness()
    text = f"not Cohen–Macaulay: depth {t.depth} < dim {t.dim}; witness H^{i}_m at degree {fmt_degree(a)}"
    data = {"cm": False, "depth": t.depth, "dim": t.dim, "field": str(fld), "witness": {"i": i, "degree": list(a), "dim": v}}
    return Report(text, data)


def _gorenstein(doc, f, fld, radius, budget, split):
    v = gorenstein_decide(f, fld, radius)
    euler = "Euler fan" if v.euler_fan else "not an Euler fan"
    if v.gorenstein:
        text = f"Gorenstein; sigma = {fmt_vec(v.sigma)}; {euler}"
    else:
        text = f"not Gorenstein: {v.reason}; {euler}"
    if v.scope != "exact":
        text += f"\nscope: {v.scope}"
    data = {
        "gorenstein": v.gorenstein,
        "sigma": list(v.sigma) if v.sigma is not None else None,
        "cm": v.cm,
        "euler_fan": v.euler_fan,
        "reason": v.reason,
        "scope": v.scope,
        "field": str(fld),
    }
    return Report(text, data, 0 if v.scope == "exact" else 2)


def _shell(doc, f, fld, radius, budget, split):
    nonpure = not f.is_pure()
    kind = " (non-pure)" if nonpure else ""
    try:
        cert = find_shelling(f, nonpure=nonpure, budget=budget)
    except SearchBudgetExceeded:
        text = f"inconclusive: search budget of {budget} nodes exceeded"
        return Report(text, {"shellable": None, "nonpure": nonpure, "budget": budget}, 2)
    if cert is None:
        return Report("not shellable (exhaustive)", {"shellable": False, "nonpure": nonpure})
    names = [doc.name_of(f.cones[i]) for i in cert.order]
    text = f"shellable{kind}; order " + ", ".join(names)
    return Report(text, {"shellable": True, "nonpure": nonpure, "order": names})


def _euler(doc, f, fld, radius, budget, split):
    ed = euler_data(f)
    lines = []
    rows = []
    for ci in range(len(f)):
        label = doc.name_of(f.cones[ci])
        lines.append(f"chi({label}) = {ed.chi[ci]}")
        rows.append({"cone": label, "chi": ed.chi[ci], "star_f_vector": ed.star_f_vectors[ci]})
    euler = is_euler_fan(f)
    lines.append("Euler fan" if euler else "not an Euler fan")
    return Report("\n".join(lines), {"cones": rows, "euler_fan": euler})


def _mv_check(doc, f, fld, radius, budget, split):
    mx = [f.cones[i] for i in f.maximal]
    names = [doc.name_of(c) for c in mx]
    if split:
        unknown = [s for s in split if s not in names]
        if unknown:
            raise ValidationError(f"unknown maximal cone names {unknown}")
        first = [c for c, n in zip(mx, names) if n in split]
    else:
        first = mx[: max(1, len(mx) // 2)]
    second = [c for c in mx if c not in first] or first
    s1 = fan_from_maximal(first, f.ambient)
    s2 = fan_from_maximal(second, f.ambient)
    rep = mayer_vietoris_check(f, s1, s2, radius, fld)
    parts = [sorted(doc.name_of(c) for c in first), sorted(doc.name_of(c) for c in second)]
    if rep.holds:
        text = f"Mayer-Vietoris identity holds on radius {radius} box ({rep.checked} degrees)"
    else:
        text = f"Mayer-Vietoris identity fails at degree {fmt_vec(rep.first_failure)}"
    data = {
        "holds": rep.holds,
        "radius": radius,
        "checked": rep.checked,
        "first_failure": list(rep.first_failure) if rep.first_failure else None,
        "parts": parts,
    }
    return Report(text, data)


def _grading(doc, f, fld, radius, budget, split):
    g = find_admissible_grading(f)
    if g is None:
        return Report("no admissible grading", {"grading": None})
    rows = sorted((doc.name_of(f.cones[i]), list(form)) for i, form in g.forms.items())
    lines = ["admissible grading:"] + [f"{n}: {fmt_vec(form)}" for n, form in rows]
    return Report("\n".join(lines), {"grading": {n: form for n, form in rows}})


_HANDLERS = {
    "validate": _validate,
    "fvector": _fvector,
    "hilbert": _hilbert,
    "cohomology": _cohomology,
    "cm": _cm,
    "gorenstein": _gorenstein,
    "shell": _shell,
    "euler": _euler,
    "mv-check": _mv_check,
    "grading": _grading,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricface", description="Toric face rings of rational pointed fans.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("path", help="fan document")
    p.add_argument("--field", help="q or fp:<prime>")
    p.add_argument("--box", type=int, help="box radius for truncated checks")
    p.add_argument("--budget", type=int, help="node limit for shelling search")
    p.add_argument("--split", help="comma separated maximal cone names forming the first subfan (mv-check)")
    p.add_argument("--json", action="store_true", help="print the machine-readable report")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with open(args.path, encoding="utf-8") as fh:
            doc = parse_fan_document(fh.read())
        fld = FieldSpec.parse(args.field) if args.field else None
        split = [s.strip() for s in args.split.split(",")] if args.split else None
        rep = run_command(args.command, doc, fld, args.box, args.budget, split)
    except ParseError as exc:
        print(f"{args.path}:{exc}", file=sys.stderr)
        return 1
    except (ToricFaceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(rep.render(args.json))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
