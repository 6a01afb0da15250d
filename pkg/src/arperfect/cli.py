"""Command-line front end.

Algebras are given as ``.alg`` paths or fixture names (a2, a3, a5, n22, ...).
Modules and complexes are given as JSON file paths or as short expressions:

    complexes:  stalk:S  chain:S:N  heart:S  big:S:R  pres:S:L  res:S:L:N  e:S:L
                (append @J to shift by J, e.g. chain:0:1@-1)
    modules:    uniserial:S:L  simple:S  proj:S  heart:S  rad:S

Exit codes: 0 success, 1 domain error (or a failed check under --strict), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from . import acceptance
from . import artheory as ar
from . import fixtures as fx
from . import forms as fm
from . import homotopy as ho
from . import io as aio
from . import modrep as mr
from .algebra import ValidatedAlgebra, validate
from .errors import ArError, FormatError


class UsageError(Exception):
    pass


@dataclass
class Workspace:
    seed: int = 0
    algebras: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)

    def algebra(self, ref: str) -> ValidatedAlgebra:
        if ref not in self.algebras:
            path = Path(ref)
            looks_like_path = path.exists() or path.suffix == ".alg" or "/" in ref
            alg = validate(fx.load_spec(path)) if looks_like_path else fx.algebra(ref)
            ps = {a.p for a in self.algebras.values()}
            if ps and alg.p not in ps:
                raise FormatError(f"workspace already holds characteristic {ps.pop()}, got {alg.p}")
            self.algebras[ref] = alg
        return self.algebras[ref]

    def module(self, alg: ValidatedAlgebra, ref: str) -> mr.ModuleRep:
        if ref not in self.modules:
            self.modules[ref] = aio.read_module(ref, alg) if Path(ref).exists() else parse_module(alg, ref)
        return self.modules[ref]

    def complex(self, alg: ValidatedAlgebra, ref: str) -> ho.PerfectComplex:
        if ref not in self.complexes:
            self.complexes[ref] = aio.read_complex(ref, alg) if Path(ref).exists() else parse_complex(alg, ref, self.seed)
        return self.complexes[ref]


def _ints(parts: list, count: int, ref: str) -> list:
    if len(parts) != count:
        raise UsageError(f"{ref!r}: expected {count} integer argument(s)")
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise UsageError(f"{ref!r}: arguments must be integers") from None


def parse_module(alg: ValidatedAlgebra, ref: str) -> mr.ModuleRep:
    kind, *args = ref.split(":")
    if kind == "uniserial":
        s, length = _ints(args, 2, ref)
        return mr.uniserial(alg, s, length)
    if kind in ("simple", "proj", "heart", "rad"):
        (s,) = _ints(args, 1, ref)
        if kind == "simple":
            return mr.simple(alg, s)
        if kind == "proj":
            return mr.projective(alg, s)
        if kind == "heart":
            return mr.heart(alg, s)
        return mr.radical_module(mr.projective(alg, s))
    raise UsageError(f"{ref!r} is neither a module file nor a module expression")


def parse_complex(alg: ValidatedAlgebra, ref: str, seed: int = 0) -> ho.PerfectComplex:
    body, _, shift = ref.partition("@")
    kind, *args = body.split(":")
    builders = {
        "stalk": (1, lambda s: ho.stalk(alg, (s,))),
        "chain": (2, lambda s, n: ar.projective_chain_complex(alg, s, n)),
        "heart": (1, lambda s: ar.heart_complex(alg, s)),
        "big": (2, lambda s, r: ar.big_homology_complex(alg, s, r)),
        "pres": (2, lambda s, l: ho.from_resolution(mr.uniserial(alg, s, l), 1)),
        "res": (3, lambda s, l, n: ho.from_resolution(mr.uniserial(alg, s, l), n)),
        "e": (2, lambda s, l: ar.e_complex(mr.uniserial(alg, s, l), seed)),
    }
    if kind not in builders:
        raise UsageError(f"{ref!r} is neither a complex file nor a complex expression")
    count, build = builders[kind]
    c = build(*_ints(args, count, ref))
    if shift:
        c = ho.shift(c, _ints([shift], 1, ref)[0])
    return c


# -- rendering helpers ---------------------------------------------------------


def describe_complex(c: ho.PerfectComplex) -> str:
    if c.is_zero():
        return "0"
    parts = []
    for n in sorted(c.types, reverse=True):
        summands = " + ".join(f"P{s}" for s in sorted(c.types[n]))
        parts.append(f"[{n}] {summands}")
    return " -> ".join(parts)


def module_label(m: mr.ModuleRep, seed: int = 0) -> str:
    if m.dim == 0:
        return "0"
    dims = []
    for piece, mult in mr.decompose(m, seed).summands:
        dims += [piece.dim] * mult
    if len(dims) == 1:
        return str(m.dim)
    return f"{m.dim}={'+'.join(str(d) for d in sorted(dims, reverse=True))}"


def render_diagram(diagram: ar.HomologyDiagram, seed: int = 0) -> list:
    xs = sorted({x for row in diagram.rows for x in row})
    cells = [[module_label(row[x], seed) if x in row else "" for x in xs] for row in diagram.rows]
    width = max([len(str(x)) for x in xs] + [len(c) for row in cells for c in row]) + 1
    lines = ["x:      " + "".join(str(x).rjust(width) for x in xs)]
    for i, row in enumerate(cells):
        lines.append(f"row {i}:  " + "".join(cell.rjust(width) for cell in row))
    bad = sorted(k for k, ok in diagram.mesh_exact.items() if not ok and k not in diagram.flagged)
    flagged = sorted(diagram.flagged)
    lines.append("meshes: " + ("all exact" if not bad else "non-exact at " + ", ".join(map(str, bad))))
    if flagged:
        lines.append("× meshes (projective present): " + ", ".join(map(str, flagged)))
    if diagram.wing_ok:
        wing_bad = [k for k, ok in diagram.wing_ok.items() if not ok]
        lines.append("wing composition factors: " + ("consistent" if not wing_bad else f"mismatch at {wing_bad}"))
    return lines


# -- commands --------------------------------------------------------------------


def cmd_validate(ws: Workspace, args) -> tuple:
    alg = ws.algebra(args.algebra)
    flags = ["valid"]
    flags.append("symmetric" if alg.is_symmetric else ("self-injective" if alg.is_self_injective else "not self-injective"))
    headline = f"{', '.join(flags)}, Loewy length {alg.radical_nilpotency}"
    rec = {
        "name": alg.name,
        "p": alg.p,
        "dim": alg.dim,
        "simples": alg.n_simples,
        "loewy_length": alg.radical_nilpotency,
        "cartan": alg.cartan.tolist(),
        "self_injective": alg.is_self_injective,
        "symmetric": alg.is_symmetric,
        "nakayama_permutation": list(alg.nakayama_perm) if alg.is_self_injective else None,
    }
    lines = [f"{alg.name}: {headline}", f"field F_{alg.p}, dimension {alg.dim}, {alg.n_simples} simple module(s)", "Cartan matrix:"]
    lines += ["  " + " ".join(str(v) for v in row) for row in alg.cartan.tolist()]
    if alg.is_self_injective:
        lines.append(f"Nakayama permutation: {rec['nakayama_permutation']}")
    return lines, rec, True


def cmd_ar_seq(ws: Workspace, args) -> tuple:
    alg = ws.algebra(args.algebra)
    m = ws.module(alg, args.module)
    seq = ar.ar_sequence(m, ws.seed)
    parts = mr.decompose(seq.middle, ws.seed).summands
    exact, split = seq.is_exact(), seq.has_section()
    summary = " + ".join(f"{mult}x(dim {piece.dim})" if mult > 1 else f"(dim {piece.dim})" for piece, mult in parts)
    lines = [
        f"0 -> tau M (dim {seq.tau_m.dim}) -> E (dim {seq.middle.dim}) -> M (dim {m.dim}) -> 0",
        f"E decomposes as {summary}",
        f"exact: {exact}; split: {split}",
    ]
    rec = {
        "tau_m": aio.module_to_dict(seq.tau_m),
        "middle": aio.module_to_dict(seq.middle),
        "middle_summand_dims": [[piece.dim, mult] for piece, mult in parts],
        "exact": exact,
        "split": split,
    }
    if args.emit:
        out = Path(args.emit)
        out.mkdir(parents=True, exist_ok=True)
        aio.write_module(seq.tau_m, out / "tau_m.json")
        aio.write_module(seq.middle, out / "middle.json")
        for k, (piece, _) in enumerate(parts):
            aio.write_module(piece, out / f"middle_summand_{k}.json")
        lines.append(f"wrote module files to {out}")
    return lines, rec, exact and not split


def cmd_pairing(ws: Workspace, args) -> tuple:
    alg = ws.algebra(args.algebra)
    c, d = ws.complex(alg, args.c), ws.complex(alg, args.d)
    v = fm.pairing(c, d)
    return [str(v)], {"pairing": v}, True


def cmd_pairing_t(ws: Workspace, args) -> tuple:
    alg = ws.algebra(args.algebra)
    c, d = ws.complex(alg, args.c), ws.complex(alg, args.d)
    v = fm.pairing_t(c, d)
    rec = {"pairing_t": str(v), "coeffs": {str(k): c for k, c in sorted(v.coeffs.items())}}
    ok = True
    text = str(v)
    if args.predict:
        m, n = args.predict
        p0 = ho.stalk(alg, (args.component_vertex,))
        base = fm.pairing_t(p0, p0)
        pred = fm.predicted_pairing(m, n, base, True)
        ok = fm.RationalValue(v) == pred
        text += f", prediction {'MATCH' if ok else 'MISMATCH'}"
        rec.update(prediction=str(pred), match=ok)
    return [text], rec, ok


def cmd_distance(ws: Workspace, args) -> tuple:
    alg = ws.algebra(args.algebra)
    c = ws.complex(alg, args.c)
    steps, rim = ar.walk_to_rim(c, ws.seed)
    lines = [f"distance {steps}", f"rim representative: length {rim.length}: {describe_complex(rim)}"]
    return lines, {"distance": steps, "rim_length": rim.length, "rim": aio.complex_to_dict(rim)}, True


def cmd_component(ws: Workspace, args) -> tuple:
    alg = ws.algebra(args.algebra)
    c = ws.complex(alg, args.c)
    steps, rim = ar.walk_to_rim(c, ws.seed)
    diagram = ar.homology_diagram(rim, args.depth, args.window, ws.seed)
    sigma = ar.stabilization_module(rim, ws.seed)
    lines = [
        "on rim" if steps == 0 else f"distance {steps} from the rim",
        f"rim representative length {rim.length}: {describe_complex(rim)}",
        "homology diagram (H_0, rim on top):",
    ]
    lines += render_diagram(diagram, ws.seed)
    lines.append(f"stabilization module: dim {sigma.dim} ({module_label(sigma, ws.seed)})")
    exact = all(ok for k, ok in diagram.mesh_exact.items() if k not in diagram.flagged)
    rec = {
        "distance": steps,
        "rim_length": rim.length,
        "rows": [{str(x): d for x, d in row.items()} for row in diagram.dims()],
        "mesh_exact": exact,
        "flagged": sorted(list(k) for k in diagram.flagged),
        "stabilization_dim": sigma.dim,
    }
    return lines, rec, exact


def cmd_minimize(ws: Workspace, args) -> tuple:
    alg = ws.algebra(args.algebra)
    c = ws.complex(alg, args.c)
    m = ho.minimize(c)
    lines = [f"minimal: {describe_complex(m)}", f"total dimension {c.total_dim()} -> {m.total_dim()}"]
    if args.out:
        aio.write_complex(m, args.out)
        lines.append(f"wrote {args.out}")
    return lines, {"complex": aio.complex_to_dict(m)}, True


def cmd_homology(ws: Workspace, args) -> tuple:
    alg = ws.algebra(args.algebra)
    c = ws.complex(alg, args.c)
    lines, rec = [], {}
    for n in sorted(c.degrees(), reverse=True):
        h = ho.homology(c, n)
        factors = h.composition_factors()
        lines.append(f"H_{n}: dim {h.dim}, composition factors {list(factors)}, summand dims {module_label(h, ws.seed)}")
        rec[str(n)] = {"dim": h.dim, "composition_factors": list(factors), "module": aio.module_to_dict(h)}
    return lines, {"homology": rec}, True


def cmd_decompose(ws: Workspace, args) -> tuple:
    alg = ws.algebra(args.algebra)
    lines, rec = [], []
    if args.module:
        m = ws.module(alg, args.obj)
        cert = mr.decompose(m, ws.seed)
        for piece, mult in cert.summands:
            lines.append(f"{mult} x module of dim {piece.dim}")
            rec.append({"multiplicity": mult, "module": aio.module_to_dict(piece)})
        certs = [p.certificate for p in cert.pieces]
    else:
        c = ws.complex(alg, args.obj)
        cert = ho.decompose_complex_cert(c, ws.seed)
        for piece, mult in cert.summands:
            lines.append(f"{mult} x {describe_complex(piece)}")
            rec.append({"multiplicity": mult, "complex": aio.complex_to_dict(piece)})
        certs = [p.certificate for p in cert.pieces]
    # complex certificates live on the action of End on the tops of the terms
    where = "End" if args.module else "End on tops"
    for k, cc in enumerate(certs):
        lines.append(f"  piece {k}: {where} local, radical dim {cc.radical_dim}, nilpotent of index {cc.nilpotency}")
    return lines, {"summands": rec}, True


def cmd_rigid(ws: Workspace, args) -> tuple:
    alg = ws.algebra(args.algebra)
    c = ws.complex(alg, args.c)
    rigid = ar.is_rigid(c, ws.seed)
    dim = ho.hom_dim(c, ho.shift(c, 1))
    return [f"dim Hom(C, C[1]) = {dim}: {'rigid' if rigid else 'not rigid'}"], {"rigid": rigid, "hom_c_c1": dim}, True


def cmd_verify(ws: Workspace, args) -> tuple:
    results = acceptance.run_all(ws.seed)
    lines = [r.line() for r in results]
    ok = all(r.passed for r in results)
    lines.append(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    rec = {"criteria": [{"number": r.number, "passed": r.passed, "checks": r.checks, "failures": r.failures[:10]} for r in results]}
    return lines, rec, ok


COMMANDS = {
    "validate": cmd_validate,
    "ar-seq": cmd_ar_seq,
    "pairing": cmd_pairing,
    "pairing-t": cmd_pairing_t,
    "distance": cmd_distance,
    "component": cmd_component,
    "minimize": cmd_minimize,
    "homology": cmd_homology,
    "decompose": cmd_decompose,
    "rigid": cmd_rigid,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arperfect", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized searches (default 0)")
    parser.add_argument("--format", choices=("text", "record"), default="text", help="text report or one JSON record")
    parser.add_argument("--strict", action="store_true", help="exit 1 when a reported check fails")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text, *positional):
        p = sub.add_parser(name, help=help_text)
        for arg in positional:
            p.add_argument(arg)
        return p

    add("validate", "validate an algebra file or fixture", "algebra")
    p = add("ar-seq", "almost split sequence ending at a module", "algebra", "module")
    p.add_argument("--emit", metavar="DIR", help="write module files for tau M and E")
    add("pairing", "dim Hom in the homotopy category", "algebra", "c", "d")
    p = add("pairing-t", "Laurent pairing over all shifts", "algebra", "c", "d")
    p.add_argument("--predict", nargs=2, type=int, metavar=("M", "N"), help="compare with the closed form for C_M, C_N")
    p.add_argument("--component-vertex", type=int, default=0, help="vertex S of the projective component (default 0)")
    add("distance", "distance from the rim of the AR component", "algebra", "c")
    p = add("component", "homology diagram of the AR component", "algebra", "c")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--window", type=int, default=None)
    p = add("minimize", "minimal model of a complex", "algebra", "c")
    p.add_argument("--out", help="write the minimal complex to this file")
    add("homology", "homology modules of a complex", "algebra", "c")
    p = add("decompose", "Krull-Schmidt decomposition with certificates", "algebra", "obj")
    p.add_argument("--module", action="store_true", help="treat OBJ as a module instead of a complex")
    add("rigid", "whether Hom(C, C[1]) vanishes", "algebra", "c")
    add("verify", "run the acceptance checks")
    return parser


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ws = Workspace(seed=args.seed)
    try:
        lines, rec, ok = COMMANDS[args.command](ws, args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"arperfect: error: {exc}", file=sys.stderr)
        return 2
    except ArError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.format == "record":
        print(json.dumps(_jsonable({"command": args.command, "ok": ok, **rec})))
    else:
        print("\n".join(lines))
    if args.command == "verify" or args.strict:
        return 0 if ok else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
