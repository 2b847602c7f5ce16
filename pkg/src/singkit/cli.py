"""Command-line front end: ``singkit <command> ...``.

Exit status is 0 on success, 1 when a reported verdict fails and 2 on
errors (bad input, unknown case, exhausted budget).
"""

import argparse
import json
import re
import sys

from . import __version__
from .errors import SingkitError
from .parser import format_ideal_file, format_map_file, load_ideal, load_map, parse_polynomial

PASS, FAIL, ERROR = 0, 1, 2

_PREFERRED = ("x", "y", "z", "w")


def _infer_vars(text):
    names = set(re.findall(r"[A-Za-z_][A-Za-z_0-9]*", text)) - {"theta"}
    return tuple(sorted(names, key=lambda v: (v not in _PREFERRED,
                                              _PREFERRED.index(v) if v in _PREFERRED else 0, v)))


def _poly(args, text):
    vars_ = tuple(v.strip() for v in args.vars.split(",")) if args.vars else _infer_vars(text)
    if not vars_:
        vars_ = ("x",)
    return parse_polynomial(text, vars_)


class _Out:
    def __init__(self, as_json):
        self.as_json = as_json
        self.record = {}

    def put(self, key, value):
        self.record[key] = value

    def emit(self):
        if self.as_json:
            print(json.dumps(self.record, indent=2, default=str))
        else:
            for k, v in self.record.items():
                if isinstance(v, list):
                    print(f"{k}:")
                    for item in v:
                        print(f"  {item}")
                else:
                    print(f"{k}: {v}")


def _num(v):
    return "inf" if v == float("inf") else int(v)


# commands

def cmd_milnor(args, out):
    from .local_algebra import milnor_number
    f = _poly(args, args.poly)
    out.put("polynomial", str(f))
    out.put("milnor", _num(milnor_number(f)))
    return PASS


def cmd_tjurina(args, out):
    from .local_algebra import tjurina_number
    f = _poly(args, args.poly)
    out.put("polynomial", str(f))
    out.put("tjurina", _num(tjurina_number(f)))
    return PASS


def cmd_kbase(args, out):
    from .local_algebra import LocalAlgebra
    A = LocalAlgebra(load_ideal(args.ideal))
    out.put("dimension", _num(A.dimension))
    out.put("basis", [str(p) for p in A.basis_polynomials()])
    return PASS


def cmd_stdbasis(args, out):
    from .standard_basis import standard_basis
    sb = standard_basis(load_ideal(args.ideal))
    out.put("order", sb.order.kind)
    out.put("generators", [str(g) for g in sb])
    return PASS


def cmd_nf(args, out):
    from .standard_basis import reduced_normal_form, standard_basis
    I = load_ideal(args.ideal)
    f = I.ring(args.poly)
    out.put("normal_form", str(reduced_normal_form(f, standard_basis(I))))
    return PASS


def cmd_embed(args, out):
    from .local_algebra import minimal_embedding
    emb = minimal_embedding(load_ideal(args.ideal))
    if args.json:
        out.put("variables", list(emb.variables))
        out.put("generators", [str(g) for g in emb.ideal.gens])
        out.put("substitutions", {k: str(v) for k, v in emb.substitutions.items()})
    else:
        sys.stdout.write(format_ideal_file(emb.ideal))
    return PASS


def cmd_tseries(args, out):
    from .catalog import t_series, t_series_class
    from .local_algebra import milnor_number, tjurina_number
    from .numbers import QQ
    lam = QQ.convert(args.lam)
    f = t_series(args.p, args.q, args.r, lam, check=not args.allow_degenerate)
    out.put("polynomial", str(f))
    out.put("class", t_series_class(args.p, args.q, args.r))
    out.put("milnor", _num(milnor_number(f)))
    out.put("tjurina", _num(tjurina_number(f)))
    return PASS


def cmd_modular_ideal(args, out):
    from .modular import modular_ideal
    data = modular_ideal(args.p, args.q, args.r)
    ideal = data.reduced if args.reduced else data.ideal
    if args.json:
        out.put("variables", list(ideal.ring.variables))
        out.put("generators", [str(g) for g in ideal.gens])
    else:
        sys.stdout.write(format_ideal_file(ideal))
    return PASS


def cmd_catalog(args, out):
    from .catalog import load_catalog, validate_entry
    cat = load_catalog()
    if args.action == "list":
        out.put("entries", [f"{e.name}: {e.equation}" for e in cat])
        return PASS
    if args.action == "show":
        if not args.name:
            raise SingkitError("catalog show needs an entry name")
        e = cat[args.name]
        out.put("name", e.name)
        out.put("equation", e.equation)
        out.put("tjurina_basis", e.tjurina_basis)
        out.put("bold_markers", e.bold_markers)
        out.put("modular_equations", e.modular_equations)
        if e.repairs:
            out.put("repaired_equations", e.stratum_texts(repaired=True))
        return PASS
    names = [args.name] if args.name else cat.names
    results = [validate_entry(cat[n]) for n in names]
    if args.json:
        out.put("rows", [r.as_dict() for r in results])
    else:
        out.put("rows", [line for r in results for line in r.lines()])
    out.put("verified", sum(1 for r in results if r.verified))
    bad = [r for r in results if r.verified and not r.stratum_ok]
    return FAIL if bad else PASS


def _shape_file(path):
    with open(path) as fh:
        raw = json.load(fh)
    return {k: [tuple(m) for m in v] for k, v in raw.items()}


def cmd_find_iso(args, out):
    from .isomorphy import find_surjection
    I_A, I_B = load_ideal(args.source), load_ideal(args.target)
    shape = _shape_file(args.shape) if args.shape else None
    res = find_surjection(I_A, I_B, shape=shape, isomorphism=not args.surjection,
                          budget=args.budget_ms / 1000 if args.budget_ms else None)
    out.put("attempts", [f"{a}: {b}" for a, b in res.attempts])
    if not res.found:
        out.put("result", res.reason)
        return FAIL
    out.put("report", res.report.lines())
    if args.json:
        out.put("map", format_map_file(res.map))
    else:
        out.emit()
        out.record = {}
        sys.stdout.write(format_map_file(res.map))
    return PASS


def cmd_verify_iso(args, out):
    from .isomorphy import verify
    amap = load_map(args.map)
    report = verify(amap, load_ideal(args.source), load_ideal(args.target))
    out.put("report", report.lines())
    return PASS if report.is_isomorphism else FAIL


def cmd_verify_paper(args, out):
    from .cases import run_case
    rep = run_case(args.case)
    if args.json:
        print(rep.to_json(timings=args.timings))
    else:
        print("\n".join(rep.lines(timings=args.timings)))
    return PASS if rep.passed else FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="singkit", description="Exact local algebra of hypersurface singularities.")
    p.add_argument("--version", action="version", version=f"singkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    for name, fn, what in (("milnor", cmd_milnor, "Milnor number"), ("tjurina", cmd_tjurina, "Tjurina number")):
        sp = add(name, fn, f"{what} of a germ at the origin")
        sp.add_argument("poly")
        sp.add_argument("--vars", help="comma-separated variables (default: inferred)")
    add("kbase", cmd_kbase, "monomial basis of a local quotient").add_argument("ideal")
    add("stdbasis", cmd_stdbasis, "standard basis of an ideal file").add_argument("ideal")
    sp = add("nf", cmd_nf, "normal form modulo an ideal")
    sp.add_argument("poly")
    sp.add_argument("--ideal", required=True)
    add("embed", cmd_embed, "minimal embedding of an ideal file").add_argument("ideal")
    sp = add("tseries", cmd_tseries, "T_{p,q,r} germ and its invariants")
    for k in "pqr":
        sp.add_argument(k, type=int)
    sp.add_argument("--lambda", dest="lam", default="1")
    sp.add_argument("--allow-degenerate", action="store_true")
    sp = add("modular-ideal", cmd_modular_ideal, "the ideal I(p,q,r)")
    for k in "pqr":
        sp.add_argument(k, type=int)
    sp.add_argument("--reduced", action="store_true", help="only the mixed generators in t1, u1, v1")
    sp = add("catalog", cmd_catalog, "table of exceptional germs")
    sp.add_argument("action", choices=["list", "show", "validate"])
    sp.add_argument("name", nargs="?")
    sp = add("find-iso", cmd_find_iso, "search an isomorphism between local algebras")
    sp.add_argument("--source", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--shape", help="JSON file {source var: [[exponents], ...]}")
    sp.add_argument("--surjection", action="store_true", help="accept a surjection")
    sp.add_argument("--budget-ms", type=int)
    sp = add("verify-iso", cmd_verify_iso, "verify a map file")
    sp.add_argument("--map", required=True)
    sp.add_argument("--source", required=True)
    sp.add_argument("--target", required=True)
    sp = add("verify-paper", cmd_verify_paper, "run a registered case")
    sp.add_argument("case", help="tseries:p,q,r | subseries:k,q,r | symmetric:p,q,r | w12 | z11 | s11 | bimodal | catalog | all")
    sp.add_argument("--timings", action="store_true")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Out(getattr(args, "json", False))
    try:
        code = args.fn(args, out)
    except (SingkitError, OSError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return ERROR
    out.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
