"""Machine-readable analysis reports and the catalog sweep driver."""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .catalog import group_from_text, print_group_expr, small_catalog
from .groups import soluble_residual
from .sigma import hall_subgroup, parse_sigma, residual
from .theorems import cross_validate
from .verdict import DEFAULT_CAPS, CapExceeded, InconsistencyError, Verdict

RESIDUAL_TAGS = {"n_sigma": "sigma_nilpotent", "s_sigma": "sigma_soluble",
                 "u_sigma": "sigma_supersoluble"}


def _residual_order(G, sigma, tag, caps):
    try:
        return residual(G, sigma, tag, caps).order
    except CapExceeded as exc:
        return Verdict.undecided(exc.reason).to_json()


def _hall_summary(G, sigma, caps):
    out = {}
    for b in sigma.blocks_meeting(G.order):
        v = hall_subgroup(G, sigma, b, caps)
        out[b.label] = v.witness.order if v.is_yes else ("none" if v.is_no else "undecided")
    return out


def _robinson(td):
    for label, v in td.items:
        if label == "ii" and v.is_yes and isinstance(v.witness, dict):
            cx = v.witness.get("complex")
            if cx is not None:
                return cx.summary()
    return None


def analyze(G, sigma, group_spec: str, caps=None, timings=False) -> dict:
    """Cross-validate G under sigma and return the report as plain JSON data.

    InconsistencyError from the library is not caught here.
    """
    caps = caps or DEFAULT_CAPS
    t0 = time.perf_counter()
    cr = cross_validate(G, sigma, caps)
    t1 = time.perf_counter()
    residuals = {key: _residual_order(G, sigma, tag, caps) for key, tag in RESIDUAL_TAGS.items()}
    residuals["soluble"] = soluble_residual(G).order
    rep = {
        "group": group_spec,
        "sigma": sigma.text,
        "order": G.order,
        "flags": {k: v.to_json() for k, v in cr.flags.items()},
        "residuals": residuals,
        "hall": _hall_summary(G, sigma, caps),
        "psigmat": {
            "oracle": cr.oracle.to_json(),
            "transitive": cr.transitive.to_json(),
            "theorem_b": cr.theorem_b.overall.to_json(),
            "theorem_c": cr.theorem_c.overall.to_json(),
            "theorem_d_sc": cr.theorem_d.overall.to_json(),
            "consistent": cr.consistent,
            "disagreements": list(cr.disagreements),
        },
        "robinson": _robinson(cr.theorem_d),
        "timings_ms": {},
    }
    if timings:
        rep["timings_ms"] = {"cross_validate": round((t1 - t0) * 1000, 1),
                             "total": round((time.perf_counter() - t0) * 1000, 1)}
    return rep


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def report_name(group_spec: str, sigma_text: str) -> str:
    h = hashlib.sha256(f"{group_spec}\n{sigma_text}".encode()).hexdigest()[:16]
    return f"report-{h}.json"


def write_report(report: dict, out_dir) -> str:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / report_name(report["group"], report["sigma"])
    path.write_text(dumps(report))
    return str(path)


def summarize(report: dict) -> str:
    def show(v):
        return v if isinstance(v, (str, int)) else f"undecided ({v['undecided']})"

    lines = [f"group  {report['group']}  (order {report['order']})",
             f"sigma  {report['sigma']}"]
    lines.append("flags  " + ", ".join(f"{k}={show(v)}" for k, v in report["flags"].items()))
    lines.append("residual orders  " + ", ".join(f"{k}={show(v)}"
                                                  for k, v in report["residuals"].items()))
    lines.append("hall   " + (", ".join(f"[{k}]={v}" for k, v in report["hall"].items()) or "-"))
    ps = report["psigmat"]
    lines.append("PsigmaT  " + ", ".join(f"{k}={show(ps[k])}" for k in
                                         ("oracle", "transitive", "theorem_b", "theorem_c", "theorem_d_sc")))
    if report["robinson"]:
        r = report["robinson"]
        lines.append(f"robinson  |D|={r['D']} |Z|={r['Z']} k={r['k']} components={r['components']}")
    lines.append("consistent" if ps["consistent"] else "INCONSISTENT: " + "; ".join(ps["disagreements"]))
    return "\n".join(lines)


# --------------------------------------------------------------------------
# sweep

@dataclass
class SweepSummary:
    rows: list = field(default_factory=list)   # (group, sigma, oracle json, consistent)
    groups: int = 0

    def counts(self):
        c = {"yes": 0, "no": 0, "undecided": 0}
        for _, _, oracle, _ in self.rows:
            c[oracle if isinstance(oracle, str) else "undecided"] += 1
        return c

    @property
    def disagreements(self):
        return sum(1 for *_, ok in self.rows if not ok)

    def final_line(self):
        c = self.counts()
        return (f"groups={self.groups} rows={len(self.rows)} yes={c['yes']} no={c['no']} "
                f"undecided={c['undecided']} disagreements={self.disagreements}")


def _sweep_group(args):
    """All reports for one catalog group; the group is built once so its
    tables are shared across the sigma-partitions."""
    expr, sigma_texts, caps = args
    G = group_from_text(expr, caps)
    out = []
    for text in sigma_texts:
        try:
            out.append(analyze(G, parse_sigma(text), expr, caps))
        except InconsistencyError as exc:
            out.append({"group": expr, "sigma": text, "error": str(exc)})
    return out


def sweep(bound: int, sigmas, caps=None, jobs=1, on_report=None) -> SweepSummary:
    """Cross-validate every catalog group of order <= bound under each sigma.

    ``on_report`` is called with every report, in catalog order.
    """
    caps = caps or DEFAULT_CAPS
    texts = [(parse_sigma(s) if isinstance(s, str) else s).text for s in sigmas]
    exprs = [print_group_expr(expr) for expr, _ in small_catalog(bound)]
    tasks = [(expr, texts, caps) for expr in exprs]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            batches = list(pool.map(_sweep_group, tasks))
    else:
        batches = map(_sweep_group, tasks)
    reports = (rep for batch in batches for rep in batch)
    out = SweepSummary(groups=len(exprs))
    for rep in reports:
        if on_report is not None:
            on_report(rep)
        if "error" in rep:
            out.rows.append((rep["group"], rep["sigma"], {"undecided": rep["error"]}, False))
        else:
            ps = rep["psigmat"]
            out.rows.append((rep["group"], rep["sigma"], ps["oracle"], ps["consistent"]))
    return out
