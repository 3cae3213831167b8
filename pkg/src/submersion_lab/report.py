"""Report assembly: a plain dict that serialises to the shipped JSON schema,
plus a text rendering that shows the same numbers."""

import json
import math
from fractions import Fraction
from importlib import resources

VERDICT_WORDS = {
    "HConformalSlant": "h-conformal slant",
    "AlmostHConformalSlant": "almost h-conformal slant",
    "NotSlant": "not slant",
    "NotConformalSubmersion": "not a horizontally conformal submersion",
}


def load_schema():
    text = resources.files("submersion_lab").joinpath("report_schema.json").read_text("utf-8")
    return json.loads(text)


def _num(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def pi_multiple(x, tol=1e-9, max_den=12):
    """``"π/6"``-style label when ``x`` is within ``tol`` of a rational multiple of π."""
    if x is None:
        return None
    frac = Fraction(x / math.pi).limit_denominator(max_den)
    if abs(x - float(frac) * math.pi) > tol:
        return None
    if frac == 0:
        return "0"
    num, den = frac.numerator, frac.denominator
    head = "π" if num == 1 else ("-π" if num == -1 else f"{num}π")
    return head if den == 1 else f"{head}/{den}"


def exp_label(x, tol=1e-9):
    """``"e^k"`` when ``x`` is within relative ``tol`` of an integer power of e."""
    if x is None or x <= 0:
        return None
    k = round(math.log(x))
    if abs(x - math.exp(k)) > tol * x:
        return None
    return "1" if k == 0 else ("e" if k == 1 else f"e^{k}")


def map_section(spec, source):
    return {
        "name": spec.name,
        "source": source,
        "domain_dim": spec.domain_dim,
        "codomain_dim": spec.codomain_dim,
        "params": {k: v for k, v in spec.params},
        "text": spec.serialize(),
    }


def classification_section(cls):
    dil = cls.dilation_summary
    return {
        "verdict": cls.verdict,
        "angles": {k: _num(v) for k, v in cls.angles.items()},
        "angle_deviation": {k: _num(r.max_deviation) for k, r in cls.reports.items()},
        "dilation": {k: _num(dil.get(k)) for k in ("mean", "min", "max")},
        "notes": list(cls.notes),
    }


def theorem_section(v):
    return {
        "id": v.theorem_id,
        "holds": bool(v.holds),
        "status": v.status,
        "max_residual": _num(v.max_residual),
        "lhs": None if v.lhs is None else bool(v.lhs),
        "agreement": None if v.agreement is None else bool(v.agreement),
        "conditions": [
            {"name": c.name, "structure": c.structure, "max_residual": _num(c.max_residual),
             "holds": bool(c.holds), "converse_applicable": bool(c.converse_applicable)}
            for c in v.conditions
        ],
        "skipped": list(v.skipped),
        "notes": list(v.notes),
    }


def build_report(spec, source, plan, tol, classification, suite=None):
    """Assemble the report dict for a classify run (``suite=None``) or a verify run."""
    report = {
        "map": map_section(spec, source),
        "plan": {"points": plan.n_points, "directions": plan.n_directions, "seed": plan.seed,
                 "box": [[float(a), float(b)] for a, b in zip(*plan.bounds(spec.domain_dim))]},
        "tolerances": {"angle": tol.angle_tol_rad, "identity": tol.identity_tol,
                       "conformal": tol.conformal_rel_tol, "fd_step_scale": tol.fd_step_scale},
        "classification": classification_section(classification),
        "identities": [],
        "commutation": [],
        "theorems": [],
    }
    if suite is not None:
        if suite.identities is not None:
            report["identities"] = [{"name": k, "max_residual": _num(r)}
                                    for k, r in suite.identities.residuals.items()]
        if suite.commutation is not None:
            report["commutation"] = [{"name": k, "max_residual": _num(r)}
                                     for k, r in suite.commutation.residuals.items()]
        if suite.commutation is not None and not suite.commutation.skipped:
            report["diagnostics"] = {
                "A_antisymmetry_defect": _num(suite.commutation.antisymmetry_defect)}
        report["theorems"] = [theorem_section(v) for v in suite.verdicts]
        report["summary"] = {"ok": bool(suite.summary["ok"]),
                             "failures": list(suite.summary["failures"])}
    return report


def to_json(report):
    """Deterministic serialisation: fixed key order, full float precision."""
    return json.dumps(report, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _fmt(x):
    return "null" if x is None else repr(x)


def _angle_text(x):
    if x is None:
        return "undefined"
    label = pi_multiple(x)
    return label if label is not None else repr(x)


def headline(report):
    cls = report["classification"]
    words = VERDICT_WORDS.get(cls["verdict"], cls["verdict"])
    parts = [f"θ_{k}={_angle_text(v)}" for k, v in cls["angles"].items()]
    dil = cls["dilation"]
    if dil["min"] is not None and dil["max"] is not None:
        if abs(dil["max"] - dil["min"]) <= 1e-9 * dil["max"]:
            label = exp_label(dil["mean"])
            parts.append(f"λ={label if label else repr(dil['mean'])}")
        else:
            parts.append(f"λ∈[{dil['min']!r}, {dil['max']!r}]")
    return f"{words}: " + ", ".join(parts)


def to_text(report):
    lines = [headline(report)]
    m = report["map"]
    lines.append(f"map: {m['name'] or m['source']} (R^{m['domain_dim']} -> R^{m['codomain_dim']})")
    if m["params"]:
        lines.append("params: " + ", ".join(f"{k}={v!r}" for k, v in m["params"].items()))
    cls = report["classification"]
    lines.append(f"verdict: {cls['verdict']}")
    for k, v in cls["angles"].items():
        label = pi_multiple(v) if v is not None else None
        extra = f" (= {label})" if label else ""
        lines.append(f"  θ_{k} = {_fmt(v)} rad{extra}, max deviation {_fmt(cls['angle_deviation'].get(k))}")
    d = cls["dilation"]
    lines.append(f"  dilation: mean {_fmt(d['mean'])}, min {_fmt(d['min'])}, max {_fmt(d['max'])}")
    for note in cls["notes"]:
        lines.append(f"  note: {note}")
    if report["identities"]:
        lines.append("identities:")
        for row in report["identities"]:
            lines.append(f"  {row['name']}: {_fmt(row['max_residual'])}")
    if report["commutation"]:
        lines.append("commutation relations:")
        for row in report["commutation"]:
            lines.append(f"  {row['name']}: {_fmt(row['max_residual'])}")
    if "diagnostics" in report:
        lines.append("diagnostics (not asserted):")
        for k, v in report["diagnostics"].items():
            lines.append(f"  {k}: {_fmt(v)}")
    if report["theorems"]:
        lines.append("theorems:")
        for t in report["theorems"]:
            lines.append(f"  {t['id']}: {t['status']} (link residual {_fmt(t['max_residual'])},"
                         f" lhs {t['lhs']}, agreement {t['agreement']})")
            for c in t["conditions"]:
                conv = "" if c["converse_applicable"] else " [converse n/a]"
                lines.append(f"    {c['structure']} {c['name']}: {_fmt(c['max_residual'])}"
                             f" holds={c['holds']}{conv}")
            for s in t["skipped"]:
                lines.append(f"    skipped: {s}")
            for n in t["notes"]:
                lines.append(f"    note: {n}")
    if "summary" in report:
        s = report["summary"]
        lines.append("summary: " + ("all checks hold" if s["ok"]
                                    else "failed: " + ", ".join(s["failures"])))
    return "\n".join(lines) + "\n"
