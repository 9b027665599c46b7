"""``framing-census`` command-line front end.

Exit codes: 0 when every check in the command passes, 1 on a failed check,
2 for unsupported cases or refused bounds, 3 for malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .classifier import (
    FAMILIES,
    classify_framings,
    classify_theta,
    h1_table_entry,
    image_of_h,
    stable_framing_preset,
    table_pi_2n_SO_2n,
    table_S_pi_n_SO_n,
    theta_input_from_json,
)
from .errors import FramingCensusError, InputFormatError, UnsupportedCase
from .exactlin import (
    AbGroupPresentation,
    group_to_json,
    matrix_from_json,
    parse_int,
    presentation_abelianization,
    presentation_from_json,
    smith_normal_form,
)
from .forms import Isometry, det_spin_class, hyperbolic_form, is_isometry, to_canonical
from .orbit_engine import orbit_arf_values, quad_orbit_census
from .quad import QuadraticRefinement, census, census_closed_form
from .verify import REGISTRY, run_checks, select
from .witnesses import WITNESSES, run_witness

EXIT_OK, EXIT_FAIL, EXIT_UNSUPPORTED, EXIT_INPUT = 0, 1, 2, 3
DEFAULT_BOUNDS = {"census_max_g": 6, "orbit_max_g": 6}


class Refused(Exception):
    """A request outside the configured bounds."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def dumps(doc: Any) -> str:
    """Canonical JSON: sorted keys, two-space indent."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def _load_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from None


class Context:
    def __init__(self, args: argparse.Namespace):
        self.json = args.json
        cfg = _load_json(args.config) if args.config else {}
        if not isinstance(cfg, dict):
            raise InputFormatError("config file must hold a JSON object")
        unknown = set(cfg) - {"seed", "max_g", *DEFAULT_BOUNDS}
        if unknown:
            raise InputFormatError(f"unknown config keys {sorted(unknown)}")
        self.seed = args.seed if args.seed is not None else parse_int(cfg.get("seed", 0))
        self.bounds = {k: parse_int(cfg.get(k, v)) for k, v in DEFAULT_BOUNDS.items()}
        max_g = args.max_g if args.max_g is not None else cfg.get("max_g")
        if max_g is not None:
            max_g = parse_int(max_g)
            if any(max_g > v for v in DEFAULT_BOUNDS.values()):
                print(f"warning: genus bound raised to {max_g}; runtime grows like 4^g", file=sys.stderr)
            self.bounds = {k: max_g for k in DEFAULT_BOUNDS}

    def bound(self, key: str, g: int):
        limit = self.bounds[key]
        if g > limit:
            raise Refused(f"genus {g} exceeds the bound {limit}; raise it with --max-g")
        return limit

    def emit(self, doc: Any, text: str | Callable[[], str]):
        print(dumps(doc) if self.json else (text() if callable(text) else text))


# subcommands ----------------------------------------------------------------

def cmd_classify(ctx: Context, args) -> int:
    rep = classify_framings(args.n, args.g)

    def text():
        lines = [
            f"n={rep.n} g={rep.g}",
            f"  rel boundary orbits: {rep.rel_boundary_orbits}",
            f"  rel point orbits:    {rep.rel_point_orbits}",
        ]
        if rep.stabiliser_rel_point is not None:
            lines.append(f"  stabiliser rel point:    {rep.stabiliser_rel_point}")
            lines.append(f"  stabiliser rel boundary: {rep.stabiliser_rel_boundary}")
        if rep.torelli_quotient is not None:
            lines.append(f"  Torelli quotient: {rep.torelli_quotient}")
        lines += [f"  note: {n.fact} [{n.citation}]" for n in rep.notes]
        return "\n".join(lines)

    ctx.emit(rep.to_json(), text)
    return EXIT_OK


def cmd_theta(ctx: Context, args) -> int:
    if args.stable_preset:
        if args.n is None or args.g is None:
            raise InputFormatError("--stable-preset needs --n and --g")
        data = stable_framing_preset(args.n, args.g)
    elif args.input:
        data = theta_input_from_json(_load_json(args.input))
    else:
        raise InputFormatError("theta needs --input FILE or --stable-preset")
    rep = classify_theta(data)
    ctx.emit(rep.to_json(), lambda: (
        f"n={rep.n} g={rep.g} case={rep.case_flag or '-'}\n"
        f"  C pi_2n(Theta+): {rep.c_pi}\n"
        f"  orbits: {rep.orbit_count} (in bijection with {rep.orbit_set})\n"
        f"  stabiliser: {rep.stabiliser}"))
    return EXIT_OK


def cmd_quad_census(ctx: Context, args) -> int:
    limit = ctx.bound("census_max_g", args.g)
    got = census(args.g, max_g=max(limit, args.g))
    want = census_closed_form(args.g)
    ok = got == want
    doc = {"g": args.g, "arf0": got[0], "arf1": got[1], "closed_form": list(want), "matches": ok}
    verdict = "matches" if ok else "DOES NOT match"
    ctx.emit(doc, f"arf0={got[0]} arf1={got[1]} ({verdict} 2^{{2g-1}}±2^{{g-1}})")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_orbits(ctx: Context, args) -> int:
    g = args.g
    ctx.bound("orbit_max_g", g)
    dec = quad_orbit_census(g, max_g=g)
    arfs = orbit_arf_values(dec, g)
    orbits = []
    for k in range(dec.orbit_count):
        orbits.append({
            "size": dec.sizes[k],
            "representative": QuadraticRefinement.from_index(g, dec.representatives[k]).bitstring(),
            "arf": sorted(arfs[k])[0] if len(arfs[k]) == 1 else sorted(arfs[k]),
        })
    ok = dec.orbit_count == 2 and all(len(a) == 1 for a in arfs)
    doc = {"g": g, "orbit_count": dec.orbit_count, "orbits": orbits, "arf_separates": ok}

    def text():
        lines = [f"g={g}: {dec.orbit_count} orbits"]
        lines += [f"  size {o['size']:>6}  rep {o['representative']}  arf {o['arf']}" for o in orbits]
        return "\n".join(lines)

    ctx.emit(doc, text)
    return EXIT_OK if ok else EXIT_FAIL


def _snf_source(args) -> tuple[AbGroupPresentation, Any]:
    if args.matrix is not None:
        try:
            doc = json.loads(args.matrix)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"--matrix is not valid JSON: {exc}") from None
    elif args.input:
        doc = _load_json(args.input)
    else:
        raise InputFormatError("snf needs --matrix or --input")
    if isinstance(doc, dict) and "generators" in doc:
        return presentation_from_json(doc), doc
    if isinstance(doc, dict) and "matrix" in doc:
        doc = doc["matrix"]
    M = matrix_from_json(doc)
    return AbGroupPresentation(M.cols, M), doc


def cmd_snf(ctx: Context, args) -> int:
    pres, _ = _snf_source(args)
    dec = smith_normal_form(pres.relations)
    group = presentation_abelianization(pres)
    ok = dec.verify()
    doc = {
        "diagonal": list(dec.diagonal),
        "group": group_to_json(group),
        "U": dec.U.to_rows(),
        "V": dec.V.to_rows(),
        "verified": ok,
    }
    ctx.emit(doc, f"diagonal {list(dec.diagonal)}\ngroup {group}\ntransforms {'verified' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_witness(ctx: Context, args) -> int:
    names = [args.name] if args.name else list(WITNESSES)
    for name in names:
        if name not in WITNESSES:
            raise InputFormatError(f"unknown witness {name!r}; choose from {sorted(WITNESSES)}")
    reports = [run_witness(name, seed=ctx.seed) for name in names]
    ok = all(r.passed for r in reports)

    def text():
        lines = []
        for r in reports:
            lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name}")
            for label, exp in r.expected.items():
                mark = "ok " if exp["passed"] else "BAD"
                lines.append(f"    {mark} {label} [{exp['provenance']}]")
            if not r.passed:
                lines.append(f"    counterexample: {r.counterexample}")
            lines += [f"    note: {n}" for n in r.notes]
        return "\n".join(lines)

    ctx.emit({"passed": ok, "seed": ctx.seed, "witnesses": [r.to_json() for r in reports]}, text)
    return EXIT_OK if ok else EXIT_FAIL


def _tables_doc(n_max: int) -> dict:
    genera = [1, 2, 3, "inf"]
    h1 = {}
    for fam in FAMILIES:
        row = {}
        for g in genera:
            e = h1_table_entry(fam, g)
            cell = group_to_json(e.group)
            if e.note:
                cell["note"] = e.note.to_json()
            row[str(g)] = cell
        h1[fam] = row
    return {
        "S_pi_n_SO_n": {str(n): group_to_json(table_S_pi_n_SO_n(n)) for n in range(1, n_max + 1)},
        "pi_2n_SO_2n": {str(n): table_pi_2n_SO_2n(n).to_json() for n in range(1, n_max + 1)},
        "image_of_h": {str(n): image_of_h(n).label for n in range(1, n_max + 1)},
        "H1": h1,
    }


def cmd_tables(ctx: Context, args) -> int:
    doc = _tables_doc(args.n_max)

    def text():
        lines = ["S pi_n(SO(n)):"]
        lines += [f"  n={n:<3} {v['name']}" for n, v in doc["S_pi_n_SO_n"].items()]
        lines.append("pi_2n(SO(2n)) and image of h:")
        for n, v in doc["pi_2n_SO_2n"].items():
            basis = f" <{', '.join(v['basis'])}>" if "basis" in v else ""
            lines.append(f"  n={n:<3} {v['name']}{basis}   im h: {doc['image_of_h'][n]}")
        lines.append("H_1:")
        for fam, row in doc["H1"].items():
            cells = "  ".join(f"g={g}: {c['name']}{' *' if 'note' in c else ''}" for g, c in row.items())
            lines.append(f"  {fam:<5} {cells}")
        lines.append("  * " + h1_table_entry("Sp^a", 2).note.citation)
        return "\n".join(lines)

    ctx.emit(doc, text)
    return EXIT_OK


def cmd_verify(ctx: Context, args) -> int:
    if args.list:
        doc = {"checks": [{"name": c.name, "provenance": c.provenance, "description": c.description}
                          for c in sorted(REGISTRY, key=lambda c: c.name)]}
        ctx.emit(doc, lambda: "\n".join(f"[{c['provenance']}] {c['name']}: {c['description']}"
                                        for c in doc["checks"]))
        return EXIT_OK
    try:
        checks = select(args.check)
    except KeyError as exc:
        raise InputFormatError(exc.args[0]) from None
    results = run_checks(checks, seed=ctx.seed)
    ok = all(r.passed for r in results)
    doc = {"passed": ok, "seed": ctx.seed, "checks": [r.to_json() for r in results]}
    ctx.emit(doc, lambda: "\n".join(
        [f"{'PASS' if r.passed else 'FAIL'}  [{r.provenance}] {r.name}" for r in results]
        + [f"{sum(r.passed for r in results)}/{len(results)} checks passed"]))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_forms(ctx: Context, args) -> int:
    doc = _load_json(args.check)
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise InputFormatError('isometry file needs a "matrix" field')
    M = matrix_from_json(doc["matrix"])
    if M.rows != M.cols or M.rows % 2:
        raise InputFormatError(f"matrix must be square of even size, got {M.shape}")
    eps = parse_int(doc.get("epsilon", 1))
    if eps not in (1, -1):
        raise InputFormatError("epsilon must be 1 or -1")
    try:
        order = doc.get("basis_order")
        canon = to_canonical(M, order) if order is not None else M
    except ValueError as exc:
        raise InputFormatError(str(exc)) from None
    F = hyperbolic_form(M.rows // 2, eps)
    ok = is_isometry(canon, F)
    out = {"epsilon": eps, "genus": F.genus, "is_isometry": ok, "canonical_matrix": canon.to_rows()}
    if ok and eps == 1:
        det, spin = det_spin_class(Isometry(canon, F))
        out["det_spin_class"] = [det, spin]
    text = f"isometry of H({'+' if eps == 1 else '-'}) genus {F.genus}: {'yes' if ok else 'NO'}"
    if "det_spin_class" in out:
        text += f"\ndet/spin class: {tuple(out['det_spin_class'])}"
    ctx.emit(out, text)
    return EXIT_OK if ok else EXIT_FAIL


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one canonical JSON object")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized checks (default 0)")
    common.add_argument("--max-g", type=int, default=None, help="raise the census and orbit genus bounds")
    common.add_argument("--config", help="JSON file with seed and bounds")

    p = _Parser(prog="framing-census", description="Framings of W_{g,1} and the algebra behind them.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common], help="orbits of framings of W_{g,1}")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--g", type=int, required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("theta", parents=[common], help="theta-structure orbits")
    s.add_argument("--input", help="JSON theta data")
    s.add_argument("--stable-preset", action="store_true", help="use stable framing data")
    s.add_argument("--n", type=int)
    s.add_argument("--g", type=int)
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("quad-census", parents=[common], help="count refinements by Arf invariant")
    s.add_argument("--g", type=int, required=True)
    s.set_defaults(func=cmd_quad_census)

    s = sub.add_parser("orbits", parents=[common], help="symplectic orbits on refinements")
    s.add_argument("--g", type=int, required=True)
    s.set_defaults(func=cmd_orbits)

    s = sub.add_parser("snf", parents=[common], help="Smith normal form of a relation matrix")
    s.add_argument("--matrix", help="JSON list of rows")
    s.add_argument("--input", help="JSON file: rows, {\"matrix\": ...} or {\"generators\", \"relations\"}")
    s.set_defaults(func=cmd_snf)

    s = sub.add_parser("witness", parents=[common], help="replay the explicit matrix computations")
    s.add_argument("--name", help=f"one of {', '.join(WITNESSES)}")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("tables", parents=[common], help="homotopy and homology tables")
    s.add_argument("--n-max", type=int, default=16)
    s.set_defaults(func=cmd_tables)

    s = sub.add_parser("verify-paper", parents=[common], help="run every golden check")
    s.add_argument("--list", action="store_true", help="list checks with provenance tags")
    s.add_argument("--check", action="append", help="run only this check (repeatable)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("forms", parents=[common], help="check an isometry given as JSON")
    s.add_argument("--check", required=True, metavar="FILE")
    s.set_defaults(func=cmd_forms)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        ctx = Context(args)
        return args.func(ctx, args)
    except UnsupportedCase as exc:
        cite = f" (see {exc.citation})" if exc.citation else ""
        print(f"unsupported: {exc}{cite}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except Refused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (InputFormatError, FramingCensusError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
