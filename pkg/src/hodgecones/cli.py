"""Command-line front end.

Machine-readable JSON goes to stdout, diagnostics to stderr.  Exit codes:
0 success / checks pass, 1 check failure, 2 usage error.  Rationals are
serialized as decimal-free "p/q" strings everywhere; floats appear only in
optional display fields.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import linalg, rep2
from .algebra import ClassPoly, hodge_dimension, relation_generators
from .cones import (
    extremality_rank,
    mu_class,
    nef_sampled_check,
    sample_Ek,
    semi4_extremal_decompose,
    semi_membership,
)
from .forms import intersection_number_formula, monomial_top_value
from .linalg import fraction_to_str
from .schur import enumerate_hodge_diagrams, wedge_decomposition
from .verify import REFERENCE_NOTES, run_all


@dataclass
class RunConfig:
    """Validated run parameters shared by the subcommands."""

    n: int = 2
    e: int = 2
    k: int = 0
    seed: int = 0
    samples: int = 1000
    output_format: str = "json"
    tolerance: float = 1e-9

    def validate(self):
        if self.n < 1:
            raise ValueError("need n >= 1")
        if self.e < 2:
            raise ValueError("need e >= 2")
        if not 0 <= self.k <= self.n * self.e:
            raise ValueError(f"need 0 <= k <= n*e, got k={self.k}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


def _emit(payload, fmt: str = "json"):
    if fmt == "pretty":
        print(json.dumps(payload, indent=2))
    else:
        print(json.dumps(payload))


def _load_class(path: str, e: int) -> ClassPoly:
    """Read a class from JSON; x-triples are accepted for e = 2."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    terms = data.get("terms", [])
    if terms and "x" in terms[0]:
        if data.get("e", e) != 2:
            raise ValueError("x-triples describe two-factor classes only")
        exps = {}
        for item in terms:
            key = tuple(item["x"])
            exps[key] = exps.get(key, Fraction(0)) + Fraction(item["coef"])
        return ClassPoly.from_exponents(2, exps)
    return ClassPoly.from_json(data, e=e)


def _cmd_dims(args) -> int:
    cfg = RunConfig(n=args.n, e=args.e, k=args.k)
    cfg.validate()
    diagrams = enumerate_hodge_diagrams(args.n, args.e, args.k)
    _emit(
        {
            "n": args.n,
            "e": args.e,
            "k": args.k,
            "diagrams": [list(d) for d in diagrams],
            "dim": hodge_dimension(args.n, args.e, args.k),
        },
        args.format,
    )
    return 0


def _cmd_relations(args) -> int:
    RunConfig(n=args.n, e=args.e).validate()
    gens = relation_generators(args.n, args.e)
    _emit(
        {
            "n": args.n,
            "e": args.e,
            "count": len(gens),
            "generators": [g.to_json() for g in gens],
            "pretty": [str(g) for g in gens],
        },
        args.format,
    )
    return 0


def _cmd_intersect(args) -> int:
    mono = tuple(int(x) for x in args.mono.split(","))
    if len(mono) != 3 or sum(mono) != 2 * args.n:
        raise ValueError("--mono must be a,b,c with a+b+c = 2n")
    formula = intersection_number_formula(args.n, *mono)
    oracle = monomial_top_value(args.n, 2, mono)
    _emit(
        {
            "monomial": list(mono),
            "formula": fraction_to_str(formula),
            "oracle": fraction_to_str(oracle),
            "agree": formula == oracle,
        },
        args.format,
    )
    return 0 if formula == oracle else 1


def _block_entry_json(cmap) -> list:
    return [
        {"x": list(x), "coef": fraction_to_str(c)}
        for x, c in sorted(cmap.items(), reverse=True)
    ]


def _block_entry_pretty(cmap) -> str:
    if not cmap:
        return "0"
    bits = []
    for x, c in sorted(cmap.items(), reverse=True):
        term = f"x{tuple(x)}"
        if c == 1:
            bits.append(term)
        elif c == -1:
            bits.append(f"-{term}")
        else:
            bits.append(f"{c}*{term}")
    return " + ".join(bits).replace("+ -", "- ")


def _cmd_blocks(args) -> int:
    cfg = RunConfig(n=args.n, k=args.k)
    cfg.validate()
    out = []
    for label, mult in wedge_decomposition(args.n, args.k).items():
        bm = rep2.block_map(args.k, label)
        out.append(
            {
                "label": list(label),
                "multiplicity": mult,
                "dim": bm.dim,
                "entries": [
                    [_block_entry_json(bm.entry_coeffs[i][j]) for j in range(bm.dim)]
                    for i in range(bm.dim)
                ],
            }
        )
    if args.format == "pretty":
        for block in out:
            bm = rep2.block_map(args.k, tuple(block["label"]))
            print(f"label {tuple(block['label'])}  multiplicity {block['multiplicity']}")
            for i in range(bm.dim):
                print("  [" + ", ".join(_block_entry_pretty(bm.entry_coeffs[i][j]) for j in range(bm.dim)) + "]")
        return 0
    _emit({"n": args.n, "k": args.k, "blocks": out}, args.format)
    return 0


def _cmd_semi(args) -> int:
    p = _load_class(args.class_file, args.e)
    cfg = RunConfig(n=args.n, e=p.e, k=p.degree)
    cfg.validate()
    cert = semi_membership(p, args.n, route=args.route)
    payload = cert.to_json()
    payload["class"] = p.to_json()
    payload["verified"] = cert.verify(p)
    _emit(payload, args.format)
    return 0


def _cmd_rays(args) -> int:
    samples = sample_Ek(args.k, args.e, args.count, args.seed)
    out = []
    for s in samples:
        item = {
            "vectors": [[fraction_to_str(x) for x in v] for v in s.vectors],
            "class": s.class_poly.to_json(),
        }
        if args.e == 2:
            item["sym_block_rank"] = extremality_rank(s.class_poly)
        out.append(item)
    _emit({"k": args.k, "e": args.e, "seed": args.seed, "samples": out}, args.format)
    return 0


def _cmd_nef_sample(args) -> int:
    p = _load_class(args.class_file, args.e)
    cfg = RunConfig(n=args.n, e=p.e, k=p.degree, seed=args.seed, samples=args.samples)
    cfg.validate()
    res = nef_sampled_check(p, args.n, args.samples, args.seed, keep_values=bool(args.plot))
    payload = res.to_json()
    payload["class"] = p.to_json()
    if args.plot:
        from .report import render_nef_histogram

        path = Path(args.plot)
        path.parent.mkdir(parents=True, exist_ok=True)
        render_nef_histogram(res.values, path)
        payload["plot"] = str(path)
    _emit(payload, args.format)
    return 0


def _cmd_decompose4(args) -> int:
    p = _load_class(args.class_file, 2)
    dec = semi4_extremal_decompose(p, n=3)
    payload = dec.to_json()
    payload["class"] = p.to_json()
    if dec.status == "extremal_product":
        payload["recomposed"] = dec.recompose().to_json()
        vecs = dec.factor_vectors()
        if vecs is not None:
            payload["factor_vectors"] = [[fraction_to_str(x) for x in v] for v in vecs]
    _emit(payload, args.format)
    return 0


def _cmd_verify_paper(args) -> int:
    results = run_all(max_n=args.n, seed=args.seed, threads=args.threads)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL':4s} {r.name:28s} {r.elapsed_s:7.2f}s", file=sys.stderr)
    payload = {
        "n": args.n,
        "seed": args.seed,
        "passed": all(r.passed for r in results),
        "checks": [r.to_json() for r in results],
        "reference_notes": REFERENCE_NOTES,
    }
    if args.out:
        from .report import render_report

        paths = render_report(results, Path(args.out), seed=args.seed)
        payload["report_files"] = [str(p) for p in paths]
    _emit(payload, args.format)
    return 0 if payload["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hodgecones",
        description="Exact computations in the Hodge-class algebra of A^e and its positivity cones",
    )
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--format", choices=("json", "csv", "pretty"), default="json", help="output format"
    )
    shared.add_argument(
        "--tolerance",
        type=float,
        default=1e-9,
        help="float pre-pass tolerance for large PSD checks (exact logic unaffected)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[shared], **kwargs)

    p = add_parser("dims", help="diagram enumeration and dimension of a class space")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, default=2)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_dims)

    p = add_parser("relations", help="generators of the relation ideal")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, default=2)
    p.set_defaults(func=_cmd_relations)

    p = add_parser("intersect", help="top intersection number: formula vs oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mono", type=str, required=True, help="a,b,c exponents of t1,t2,l")
    p.set_defaults(func=_cmd_intersect)

    p = add_parser("blocks", help="symbolic block maps for degree k (e = 2)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=_cmd_blocks)

    p = add_parser("semi", help="semipositivity certificate for a class file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, default=2)
    p.add_argument("--class", dest="class_file", required=True, help="JSON class file")
    p.add_argument("--route", choices=("blocks", "oracle"), default=None)
    p.set_defaults(func=_cmd_semi)

    p = add_parser("rays", help="sample products of extremal divisor classes")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--e", type=int, default=2)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_rays)

    p = add_parser("nef-sample", help="sampled nef falsification (necessary only)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, default=2)
    p.add_argument("--class", dest="class_file", required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot", type=str, default=None, help="write a pairing histogram PNG")
    p.set_defaults(func=_cmd_nef_sample)

    p = add_parser("decompose4", help="extremal decomposition in degree 4 (n = 3)")
    p.add_argument("--class", dest="class_file", required=True)
    p.set_defaults(func=_cmd_decompose4)

    p = add_parser("verify-paper", help="run the full reproduction battery")
    p.add_argument("--n", type=int, default=4, help="cap for the deepest parameter sweeps")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", type=str, default=None, help="directory for results.{json,csv} and figures")
    p.set_defaults(func=_cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    linalg.FLOAT_EIG_TOLERANCE = args.tolerance
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
