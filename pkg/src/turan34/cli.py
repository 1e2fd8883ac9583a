"""Command-line entry point.

Exit codes: 0 success, 1 mathematical negative (SINGULAR, rejection, a
witness found where none should be), 2 usage or input error, 3 search budget
exhausted.  A run manifest (JSON) goes to stderr, or to ``--manifest PATH``.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import __version__
from .constructions import (
    ALIASES,
    CATALOG,
    balanced_spec,
    catalog,
    kostochka_3graph,
    kostochka_orgraph,
    parse_heights,
    verify_missing,
)
from .extraction import BudgetExhausted, DoubledEmbedding, FailureWitness, certify_regularization, check_doubled, find_doubled_embedding
from .extremal import density_table, ex_min, export_cnf
from .flags import (
    CertificateError,
    FlagCertificate,
    FlagType,
    enumerate_flags,
    export_sdp,
    flag_size,
    parse_sdpa,
    read_solution,
    round_solution,
    verify_certificate,
    zero_certificate,
)
from .hypergraph import FormatError, ThreeGraph, enumerate_graphs, format_3graph, induced_density, parse_3graph
from .orgraph import format_orgraph, parse_orgraph
from .regularity import classify_all, find_realization

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


@dataclass
class RunManifest:
    subcommand: str
    argv: list
    inputs: dict = field(default_factory=dict)  # path -> sha256
    version: str = __version__
    wall_time: float = 0.0
    result_digest: str = ""
    exit_status: int = 0


class _Ctx:
    def __init__(self, args, manifest: RunManifest):
        self.args = args
        self.manifest = manifest

    def read(self, path: str) -> str:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        self.manifest.inputs[path] = hashlib.sha256(text.encode()).hexdigest()
        return text

    def graph(self, ref: str) -> ThreeGraph:
        """A catalog name or a path to a 3graph file."""
        if os.path.exists(ref):
            return parse_3graph(self.read(ref))
        return catalog(ref)

    def family(self, text: str | None) -> list[ThreeGraph]:
        if not text:
            return []
        return [self.graph(x.strip()) for x in text.split(",") if x.strip()]


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, default=str) + "\n"


def _edges(g: ThreeGraph) -> list:
    return [list(e) for e in g.sorted_edges()]


# ---------------------------------------------------------------------------
# handlers; each returns (exit status, stdout text)


def cmd_catalog(ctx):
    a = ctx.args
    if a.name:
        g = catalog(a.name)
        if a.json:
            return EXIT_OK, _dump({"name": a.name, "n": g.n, "edges": _edges(g)})
        return EXIT_OK, format_3graph(g)
    rows = [(name, g) for name, g in list(CATALOG.items()) + list(ALIASES.items())]
    if a.json:
        return EXIT_OK, _dump([{"name": n, "n": g.n, "m": g.num_edges} for n, g in rows])
    out = ["name\tn\tm"] + [f"{n}\t{g.n}\t{g.num_edges}" for n, g in rows]
    return EXIT_OK, "\n".join(out) + "\n"


def _spec(a):
    if a.balanced is not None:
        return balanced_spec(a.balanced)
    if not a.heights:
        raise ValueError("give --heights or --balanced")
    return parse_heights(a.heights, strict=not a.permissive)


def cmd_construct(ctx):
    a = ctx.args
    spec = _spec(a)
    if a.orgraph:
        return EXIT_OK, format_orgraph(kostochka_orgraph(spec))
    g = kostochka_3graph(spec)
    if a.json:
        dens = induced_density(ThreeGraph(3, [(1, 2, 3)]), g) if g.n >= 3 else Fraction(0)
        return EXIT_OK, _dump({"heights": str(spec), "n": g.n, "edges": _edges(g), "density": str(dens)})
    return EXIT_OK, format_3graph(g)


def cmd_verify(ctx):
    a = ctx.args
    host = ctx.graph(a.input) if a.input else kostochka_3graph(_spec(a))
    rep = verify_missing(host, budget=a.budget, threads=a.threads)
    status = EXIT_OK if rep.ok else EXIT_NEGATIVE
    if a.json:
        return status, _dump(rep.as_dict())
    lines = [f"vertices\t{rep.vertices}", f"subsets_scanned\t{rep.subsets_scanned}"]
    for name, hits in rep.witnesses.items():
        lines.append(f"{name}\t{len(hits)}" + "".join(f"\t{','.join(map(str, w))}" for w in hits[:5]))
    lines.append("OK" if rep.ok else "FOUND")
    return status, "\n".join(lines) + "\n"


def cmd_density(ctx):
    a = ctx.args
    h, g = ctx.graph(a.h), ctx.graph(a.g)
    d = induced_density(h, g)
    if a.json:
        return EXIT_OK, _dump({"density": str(d)})
    return EXIT_OK, f"{d}\n"


def cmd_classify(ctx):
    a = ctx.args
    fam = ctx.family(a.forbid)
    res = classify_all(a.size, fam, cap=a.cap, threads=a.threads)
    rows = []
    for g, key, r in res.entries:
        wit = "-"
        if r is not None and a.witness_dir:
            os.makedirs(a.witness_dir, exist_ok=True)
            wit = os.path.join(a.witness_dir, key.hex() + ".orgraph")
            _write(wit, format_orgraph(r.orgraph))
        rows.append((key.hex(), "REGULAR" if r else "SINGULAR", g, r, wit))
    if a.json:
        doc = {
            "size": a.size,
            "counts": res.counts(),
            "classes": [
                {
                    "key": k,
                    "verdict": v,
                    "edges": _edges(g),
                    "realization": None if r is None else sorted(map(list, r.orgraph.arcs)),
                }
                for k, v, g, r, _ in rows
            ],
        }
        return EXIT_OK, _dump(doc)
    out = ["key\tverdict\tedges\twitness"]
    out += [f"{k}\t{v}\t{g.num_edges}\t{w}" for k, v, g, _, w in rows]
    c = res.counts()
    out.append(f"# regular {c['regular']} singular {c['singular']}")
    return EXIT_OK, "\n".join(out) + "\n"


def cmd_realize(ctx):
    a = ctx.args
    g = ctx.graph(a.input)
    r = find_realization(g, cap=a.cap)
    if r is None:
        return EXIT_NEGATIVE, _dump({"verdict": "SINGULAR"}) if a.json else "SINGULAR\n"
    if a.json:
        return EXIT_OK, _dump({"verdict": "REGULAR", "n": g.n, "arcs": sorted(map(list, r.orgraph.arcs))})
    return EXIT_OK, format_orgraph(r.orgraph)


def _pairs(text: str):
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        a, _, b = chunk.partition(",")
        out.append((int(a), int(b)))
    return tuple(out)


def _certify_output(a, d: DoubledEmbedding):
    rep = check_doubled(d)
    if not rep.ok:
        msg = f"not a doubled embedding: {len(rep.homogeneity)} homogeneity, {len(rep.consistency)} consistency violations"
        raise ValueError(msg)
    res = certify_regularization(d)
    if isinstance(res, FailureWitness):
        doc = {"verdict": "FAILED", "claim": res.claim, "indices": list(res.indices),
               "forbidden": res.forbidden, "subset": None if res.subset is None else list(res.subset)}
        if a.json:
            return EXIT_NEGATIVE, _dump(doc)
        sub = "-" if res.subset is None else ",".join(map(str, res.subset))
        return EXIT_NEGATIVE, f"FAILED\t{res.claim}\t{res.forbidden}\t{sub}\n"
    if a.json:
        return EXIT_OK, _dump({"verdict": "REALIZES", "pairs": [list(p) for p in d.pairs],
                               "arcs": sorted(map(list, res.orgraph.arcs))})
    return EXIT_OK, format_orgraph(res.orgraph) + "REALIZES\n"


def cmd_extract(ctx):
    a = ctx.args
    host = ctx.graph(a.host)
    if a.action == "search":
        if a.ell is None:
            raise ValueError("extract search needs --ell")
        try:
            d = find_doubled_embedding(host, a.ell, budget=a.budget, seed=a.seed)
        except BudgetExhausted as exc:
            return EXIT_BUDGET, _dump({"verdict": "BUDGET", "detail": str(exc)}) if a.json else "BUDGET\n"
        if d is None:
            return EXIT_NEGATIVE, _dump({"verdict": "NONE"}) if a.json else "NONE\n"
        if not a.json:
            code, text = _certify_output(a, d)
            pairs = ";".join(f"{x},{y}" for x, y in d.pairs)
            return code, f"# pairs {pairs}\n" + text
        return _certify_output(a, d)
    if not a.pairs:
        raise ValueError("extract needs --pairs (or the search action)")
    return _certify_output(a, DoubledEmbedding(host, _pairs(a.pairs)))


def cmd_exmin(ctx):
    a = ctx.args
    fam = ctx.family(a.forbid)
    names = a.forbid or ""
    if a.table:
        rows = density_table(a.n, fam, n_min=a.n_min, budget=a.budget)
        results = [r for _, r, _ in rows]
    else:
        results = [ex_min(a.n, fam, all_witnesses=a.all_witnesses, budget=a.budget, witness_cap=a.witness_cap)]
    status = EXIT_OK if all(r.exact for r in results) else EXIT_BUDGET
    if a.emit_cnf:
        r = results[-1]
        m = a.cnf_edges if a.cnf_edges is not None else (r.minimum if r.exact else r.upper_bound)
        if m is None:
            raise ValueError("no edge count for the CNF; pass --cnf-edges")
        _write(a.emit_cnf, export_cnf(r.n, fam, m))
    if a.witness_dir:
        os.makedirs(a.witness_dir, exist_ok=True)
        for r in results:
            for i, w in enumerate(r.witnesses, 1):
                _write(os.path.join(a.witness_dir, f"n{r.n}_w{i}.3graph"), format_3graph(w))
    if a.json:
        doc = [
            {
                "n": r.n,
                "family": r.family,
                "ex_min": r.minimum,
                "lower_bound": r.lower_bound,
                "upper_bound": r.upper_bound,
                "exact": r.exact,
                "density": None if r.density is None else str(r.density),
                "witnesses": [_edges(w) for w in r.witnesses],
                "nodes": r.stats.get("nodes"),
            }
            for r in results
        ]
        return status, _dump(doc if a.table else doc[0])
    out = ["n\tfamily\tex_min\tdensity\texact\tlower\tupper\twitnesses"]
    for r in results:
        out.append(
            f"{r.n}\t{names}\t{'-' if r.minimum is None else r.minimum}\t"
            f"{'-' if r.density is None else r.density}\t{'yes' if r.exact else 'no'}\t"
            f"{r.lower_bound}\t{'-' if r.upper_bound is None else r.upper_bound}\t{len(r.witnesses)}"
        )
    return status, "\n".join(out) + "\n"


def _types(text, ell, fam):
    if text is None:
        return None
    out = []
    for k in (int(x) for x in text.split(",") if x.strip()):
        if k >= 3:
            out += [FlagType.of(g) for g in enumerate_graphs(k, fam)]
        else:
            out.append(FlagType(k))
    return out


def cmd_flag(ctx):
    a = ctx.args
    if a.action == "export":
        fam = ctx.family(a.forbid)
        prob, manifest = export_sdp(fam, a.ell, _types(a.types, a.ell, fam))
        if not a.out:
            raise ValueError("flag export needs --out")
        _write(a.out, prob.to_text())
        _write(a.out + ".json", _dump(manifest))
        summary = {"constraints": prob.m, "blocks": prob.blocks, "file": a.out, "manifest": a.out + ".json"}
        if a.json:
            return EXIT_OK, _dump(summary)
        return EXIT_OK, f"constraints\t{prob.m}\nblocks\t{' '.join(map(str, prob.blocks))}\n"
    if a.action == "zero":
        fam = ctx.family(a.forbid)
        cert = zero_certificate(fam, a.ell, _types(a.types, a.ell, fam))
        text = cert.to_json()
        if a.out:
            _write(a.out, text)
            return EXIT_OK, ""
        return EXIT_OK, text
    if a.action == "flags":
        fam = ctx.family(a.forbid)
        rows = []
        for t in _types(a.types or "0,1,3", a.ell, fam):
            s = flag_size(a.ell, t.k)
            rows.append((t.k, t.mask, s, len(enumerate_flags(t, s, fam))))
        out = ["labels\ttype_mask\tflag_size\tflags"] + ["\t".join(map(str, r)) for r in rows]
        return EXIT_OK, "\n".join(out) + "\n"
    if a.action == "verify":
        if not a.cert:
            raise ValueError("flag verify needs --cert")
        cert = FlagCertificate.from_json(ctx.read(a.cert))
        v = verify_certificate(cert, threads=a.threads)
        status = EXIT_OK if v.accepted else EXIT_NEGATIVE
        if a.json:
            return status, _dump(v.as_dict())
        verdict = "ACCEPTED" if v.accepted else "REJECTED"
        lines = [verdict, f"bound\t{v.bound}", f"float\t{float(v.bound) if v.bound is not None else '-'}", f"reason\t{v.reason}"]
        return status, "\n".join(lines) + "\n"
    if a.action == "solve":
        try:
            from .external import solve_sdpa, write_solution
        except ImportError:  # pragma: no cover
            raise ValueError("solving needs the optional cvxpy dependency") from None
        prob = parse_sdpa(ctx.read(a.input))
        try:
            obj, mats = solve_sdpa(prob)
        except ImportError:
            raise ValueError("solving needs the optional cvxpy dependency") from None
        text = write_solution(obj, mats, prob.m)
        if a.out:
            _write(a.out, text)
        return EXIT_OK, f"objective\t{obj!r}\n"
    if a.action == "round":
        if not (a.input and a.problem):
            raise ValueError("flag round needs --in and --problem (the export manifest)")
        manifest = json.loads(ctx.read(a.problem))
        m = len(manifest["constraints"])
        blocks = [len(b["flags"]) for b in manifest["blocks"]] + [-(m + 1)]
        _, mats = read_solution(ctx.read(a.input), blocks)
        bound = Fraction(a.bound) if a.bound is not None else None
        if bound is None:
            # claim the solver's value less a 10^-3 margin
            c = Fraction(float(mats[-1][m, m])) - Fraction(1, 1000)
            bound = max(Fraction(0), Fraction(int(c * a.den), a.den))
        cert = round_solution(mats[:-1], a.den, manifest, bound)
        text = cert.to_json()
        if a.out:
            _write(a.out, text)
            return EXIT_OK, f"bound\t{cert.bound}\n"
        return EXIT_OK, text
    raise ValueError(f"unknown flag action {a.action!r}")


def _sniff(text: str) -> str:
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("{"):
            return "certificate"
        if s.startswith("3graph"):
            return "3graph"
        if s.startswith("orgraph"):
            return "orgraph"
        if s.startswith("p cnf") or s.startswith("c "):
            return "cnf"
        return "sdpa"
    return "empty"


def cmd_fmt_check(ctx):
    a = ctx.args
    out = []
    status = EXIT_OK
    for path in a.files:
        text = ctx.read(path)
        kind = _sniff(text)
        try:
            if kind == "3graph":
                parse_3graph(text)
            elif kind == "orgraph":
                parse_orgraph(text)
            elif kind == "certificate":
                FlagCertificate.from_json(text)
            elif kind == "sdpa":
                parse_sdpa(text)
            elif kind == "empty":
                raise FormatError("empty file", 1, 1)
            version = "FMT_VERSION" in text or kind == "certificate"
            out.append(f"{path}\t{kind}\tOK" + ("" if version else "\tno FMT_VERSION"))
        except (ValueError, KeyError) as exc:
            status = EXIT_NEGATIVE
            out.append(f"{path}\t{kind}\tERROR\t{exc}")
    return status, "\n".join(out) + "\n"


# ---------------------------------------------------------------------------


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommand copies must not overwrite options given before the subcommand
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    c.add_argument("--threads", type=int, default=d(1))
    c.add_argument("--seed", type=int, default=d(None))
    c.add_argument("--manifest", metavar="PATH", default=d(None), help="write the run manifest here instead of stderr")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common(True)
    p = argparse.ArgumentParser(prog="turan34", description=__doc__.splitlines()[0], parents=[_common(False)])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalog", parents=[common], help="named graphs")
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_catalog)

    def heights(sp):
        sp.add_argument("--heights", help='e.g. "a:1,2;b:1,2;c:-1,3"')
        sp.add_argument("--balanced", type=int, metavar="K", help="heights 1..K in every class")
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--strict", action="store_true", default=True, help="reject zero cross-class sums (default)")
        g.add_argument("--permissive", action="store_true", help="allow zero sums, leaving those pairs independent")

    s = sub.add_parser("construct", parents=[common], help="Kostochka slices")
    s.add_argument("kind", choices=["kostochka"])
    heights(s)
    s.add_argument("--orgraph", action="store_true", help="emit the orgraph instead")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("verify", parents=[common], help="scan a slice for induced H1, H2, H3")
    s.add_argument("check", choices=["missing"])
    heights(s)
    s.add_argument("--in", dest="input", help="3graph file instead of heights")
    s.add_argument("--budget", type=int, default=24, help="vertex cap")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("density", parents=[common], help="induced density p(H, G)")
    s.add_argument("--h", required=True)
    s.add_argument("--g", required=True)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("classify", parents=[common], help="regular/singular classes on N vertices")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--forbid", default="")
    s.add_argument("--cap", type=int, default=6)
    s.add_argument("--witness-dir")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("realize", parents=[common], help="find a realizing orgraph")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--cap", type=int, default=7)
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("extract", parents=[common], help="orientation from a doubled embedding")
    s.add_argument("action", nargs="?", choices=["certify", "search"], default="certify")
    s.add_argument("--host", required=True)
    s.add_argument("--pairs", help='e.g. "1,2;5,6;8,9"')
    s.add_argument("--ell", type=int)
    s.add_argument("--budget", type=int, default=10**7)
    s.set_defaults(func=cmd_extract)

    s = sub.add_parser("exmin", parents=[common], help="exact minimal edge counts")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--forbid", default="I34")
    s.add_argument("--all-witnesses", action="store_true")
    s.add_argument("--witness-cap", type=int, default=100)
    s.add_argument("--witness-dir")
    s.add_argument("--table", action="store_true", help="rows n_min..n")
    s.add_argument("--n-min", type=int, default=4)
    s.add_argument("--budget", type=int, default=2_000_000)
    s.add_argument("--emit-cnf", metavar="PATH")
    s.add_argument("--cnf-edges", type=int)
    s.set_defaults(func=cmd_exmin)

    s = sub.add_parser("flag", parents=[common], help="flag-algebra certificates")
    s.add_argument("action", choices=["export", "verify", "round", "solve", "zero", "flags"])
    s.add_argument("--forbid", default="I34")
    s.add_argument("--ell", type=int, default=4)
    s.add_argument("--types", help="comma-separated type sizes, e.g. 0,1,3")
    s.add_argument("--out")
    s.add_argument("--cert")
    s.add_argument("--in", dest="input")
    s.add_argument("--problem", help="manifest written by flag export")
    s.add_argument("--den", type=int, default=10_000)
    s.add_argument("--bound")
    s.set_defaults(func=cmd_flag)

    s = sub.add_parser("fmt-check", parents=[common], help="validate files")
    s.add_argument("files", nargs="+")
    s.set_defaults(func=cmd_fmt_check)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    manifest = RunManifest(args.command, argv)
    ctx = _Ctx(args, manifest)
    start = time.perf_counter()
    try:
        status, text = args.func(ctx)
    except (FormatError, CertificateError, ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"turan34 {args.command}: error: {msg}", file=sys.stderr)
        status, text = EXIT_USAGE, ""
    sys.stdout.write(text)
    sys.stdout.flush()
    manifest.wall_time = round(time.perf_counter() - start, 6)
    manifest.result_digest = hashlib.sha256(text.encode()).hexdigest()
    manifest.exit_status = status
    doc = json.dumps(asdict(manifest), sort_keys=True)
    if args.manifest:
        _write(args.manifest, doc + "\n")
    else:
        print(doc, file=sys.stderr)
    return status


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
