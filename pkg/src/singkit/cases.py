"""Registered end-to-end cases and their reports.

A case runs one pipeline (T-series invariants and diagonal certification,
the W12/Z11/S11/bimodal isomorphisms, the table validation) and returns a
:class:`CaseReport`.  Reports are deterministic; timings are kept apart and
printed only on request.
"""

import json
import time
from dataclasses import dataclass, field

from .catalog import load_catalog, load_example, t_series
from .errors import UnknownCase
from .isomorphy import (find_surjection, isomorphy_prechecks, solve_diagonal,
                        symmetric_exception_map, verify)
from .local_algebra import LocalAlgebra, milnor_number, tjurina_number
from .modular import modular_ideal, subseries_of, subseries_profile
from .polynomial import jacobian_ideal

__all__ = ["CaseReport", "run_case", "CASES", "diagonal_isomorphism", "case_names"]


@dataclass
class CaseReport:
    name: str
    inputs: dict = field(default_factory=dict)
    invariants: dict = field(default_factory=dict)
    verdicts: list = field(default_factory=list)   # (label, passed, detail)
    details: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    children: list = field(default_factory=list)

    @property
    def passed(self):
        return all(v[1] for v in self.verdicts) and all(c.passed for c in self.children)

    def check(self, label, ok, detail=""):
        self.verdicts.append((label, bool(ok), str(detail)))
        return ok

    def lines(self, timings=False):
        out = [f"case {self.name}: {'PASS' if self.passed else 'FAIL'}"]
        out += [f"  input {k}: {v}" for k, v in self.inputs.items()]
        out += [f"  {k} = {v}" for k, v in self.invariants.items()]
        for label, ok, detail in self.verdicts:
            out.append(f"  [{'pass' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))
        out += [f"  {d}" for d in self.details]
        if timings:
            out += [f"  time {k}: {v:.2f}s" for k, v in self.timings.items()]
        for c in self.children:
            out += ["  " + line for line in c.lines(timings)]
        return out

    def as_dict(self, timings=False):
        d = {"name": self.name, "passed": self.passed, "inputs": self.inputs,
             "invariants": self.invariants,
             "verdicts": [{"label": a, "passed": b, "detail": c} for a, b, c in self.verdicts],
             "details": self.details, "children": [c.as_dict(timings) for c in self.children]}
        if timings:
            d["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return d

    def to_json(self, timings=False):
        return json.dumps(self.as_dict(timings), indent=2, default=str)


def _inv(v):
    return "inf" if v == float("inf") else int(v)


def diagonal_isomorphism(p, q, r):
    """solve_diagonal, or the rational map when two or three coefficients vanish."""
    prof = subseries_profile(p, q, r)
    if prof.line_components >= 2:
        return symmetric_exception_map(p, q, r)
    return solve_diagonal(p, q, r)


def _triple(arg):
    try:
        p, q, r = (int(v) for v in arg.split(","))
    except ValueError:
        raise UnknownCase(f"expected three comma-separated integers, got {arg!r}") from None
    return p, q, r


def case_tseries(arg):
    p, q, r = _triple(arg)
    rep = CaseReport(f"tseries:{p},{q},{r}")
    t0 = time.monotonic()
    f = t_series(p, q, r)
    mu, tau = milnor_number(f), tjurina_number(f)
    rep.inputs["f"] = str(f)
    rep.invariants.update(mu=_inv(mu), tau=_inv(tau))
    rep.check("mu = p+q+r-1", mu == p + q + r - 1)
    rep.check("tau = p+q+r-2", tau == p + q + r - 2)
    rep.timings["invariants"] = time.monotonic() - t0
    data = modular_ideal(p, q, r)
    prof = subseries_profile(p, q, r)
    rep.invariants["vanishing"] = sorted(prof.vanishing)
    t0 = time.monotonic()
    A = LocalAlgebra(data.reduced)
    if not prof.vanishing:
        rep.invariants["dim O/I"] = _inv(A.dimension)
        rep.check("O/I(p,q,r) Artinian of dimension mu", A.dimension == mu)
    else:
        rep.invariants["dim O/I"] = _inv(A.dimension)
        rep.details.append(f"sub-series member {subseries_of(p, q, r)}; stratum has line components")
    sol = diagonal_isomorphism(p, q, r)
    report = sol.certify()
    rep.inputs["target"] = str(sol.target_polynomial)
    rep.inputs["field"] = str(sol.field)
    rep.details.append(f"map ({sol.kind}): " + "; ".join(
        f"{s} -> {img}" for s, img in zip(sol.map.source, sol.map.images)))
    rep.check("ambient isomorphism certified", report.is_isomorphism, report.verdict)
    rep.timings["certification"] = time.monotonic() - t0
    return rep


def case_subseries(arg):
    rep = case_tseries(arg)
    rep.name = "subseries:" + arg
    rep.check("on a sub-series", subseries_of(*_triple(arg)) is not None)
    return rep


def case_symmetric(arg):
    rep = case_tseries(arg)
    rep.name = "symmetric:" + arg
    rep.check("two or more coefficients vanish",
              subseries_profile(*_triple(arg)).line_components >= 2)
    return rep


def _example_case(name, use_map):
    ex = load_example(name)
    rep = CaseReport(name)
    f = ex.polynomial
    rep.inputs["f"] = str(f)
    rep.inputs["stratum"] = "; ".join(str(g) for g in ex.stratum.gens)
    rep.details += ex.notes
    t0 = time.monotonic()
    mu = milnor_number(f)
    A = LocalAlgebra(ex.stratum)
    rep.invariants.update(mu=_inv(mu), **{"dim O_M": _inv(A.dimension), "embdim O_M": A.embdim})
    rep.check("dim O_M = mu", A.dimension == mu)
    if ex.full_stratum is not None:
        full = LocalAlgebra(ex.full_stratum)
        rep.invariants["dim O_M (all generators)"] = _inv(full.dimension)
        rep.check("full ideal has the same dimension", full.dimension == mu)
    if ex.basis is not None:
        from .catalog import miniversal_deformation
        d = miniversal_deformation(f, ex.basis)
        rep.details.append(f"miniversal deformation with {len(d.basis)} parameters")
    I_B = jacobian_ideal(f)
    pre = isomorphy_prechecks(ex.stratum, I_B)
    rep.check("prechecks (dimension, embdim, Hilbert function)", pre.ok, ",".join(pre.failures()))
    done = False
    if use_map and ex.map is not None:
        report = verify(ex.map, ex.stratum, I_B)
        rep.details.append("printed map over " + str(ex.map.field))
        rep.details += ["  " + s for s in str(ex.map).splitlines()]
        rep.check("printed map verified", report.is_isomorphism, report.verdict)
        done = report.is_isomorphism
    rep.timings["checks"] = time.monotonic() - t0
    t0 = time.monotonic()
    if not done:
        res = find_surjection(ex.stratum, I_B, shape=ex.shape)
        ok = res.found and res.report.is_isomorphism
        rep.details.append("shape-guided search: " + ", ".join(f"{a} {b}" for a, b in res.attempts))
        if res.found:
            rep.details.append("found map over " + str(res.map.field))
            rep.details += ["  " + s for s in str(res.map).splitlines()]
        rep.check("search found an isomorphism", ok, res.reason or res.report.verdict)
    rep.timings["isomorphism"] = time.monotonic() - t0
    return rep


def case_catalog(arg=None):
    rep = CaseReport("catalog")
    cat = load_catalog()
    t0 = time.monotonic()
    results = cat.validate()
    verified = [v for v in results if v.verified]
    rep.invariants["rows"] = len(results)
    rep.invariants["verified"] = len(verified)
    rep.check("at least 12 rows pass transcription validation", len(verified) >= 12)
    for v in results:
        if v.verified:
            rep.check(f"{v.name}: tau = basis count, mu = tau + 1, Hesse", True)
            rep.check(f"{v.name}: stratum prechecks ({v.stratum_source})", v.stratum_ok)
        else:
            rep.details.append(f"{v.name}: unverified; " + "; ".join(v.messages))
        rep.details += [f"{v.name}: {m}" for m in v.messages if v.verified]
    rep.timings["validation"] = time.monotonic() - t0
    return rep


CASES = {
    "tseries": case_tseries,
    "subseries": case_subseries,
    "symmetric": case_symmetric,
    "w12": lambda arg=None: _example_case("w12", True),
    "z11": lambda arg=None: _example_case("z11", False),
    "s11": lambda arg=None: _example_case("s11", False),
    "bimodal": lambda arg=None: _example_case("bimodal", True),
    "catalog": case_catalog,
}

# what "all" runs, in this order
ALL = ["tseries:5,4,3", "tseries:5,5,5", "tseries:7,5,3", "subseries:5,3,3",
       "symmetric:4,4,4", "w12", "z11", "s11", "bimodal", "catalog"]


def case_names():
    return list(CASES) + ["all"]


def run_case(name):
    """Run a registered case: ``tseries:p,q,r``, ``w12``, ..., or ``all``."""
    if name == "all":
        rep = CaseReport("all")
        rep.children = [run_case(n) for n in ALL]
        return rep
    key, _, arg = name.partition(":")
    if key not in CASES:
        raise UnknownCase(f"unknown case {name!r}; known: {', '.join(case_names())}")
    if key in ("tseries", "subseries", "symmetric") and not arg:
        raise UnknownCase(f"case {key} needs indices, e.g. {key}:5,4,3")
    return CASES[key](arg or None)
