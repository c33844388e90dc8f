"""Deterministic JSON serialisation and the ``report_v1`` document."""
from __future__ import annotations

import json
import math
from typing import Any, Mapping, Optional

from . import __version__
from .algebra import ParameterTriple
from .classifier import DISJOINT_FAMILIES, FamilyMatch, Verdict
from .config import Config
from .orbifolds import orbifold_of
from .presentations import generator_words, presentation_of
from .verify import (
    Certificate,
    CertificateEntry,
    certify_geometry,
    certify_presentation,
    element_report,
    expected_root_half_trace,
    realize_match,
    sqrt_commutator,
)

REPORT_VERSION = "report_v1"
TOOL_NAME = "kleinian-rp"


def format_float(x: float) -> str:
    """17 significant digits, lowercase scientific."""
    if not math.isfinite(x):
        return json.dumps(str(x))
    return format(x, ".16e")


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and fixed float formatting."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(obj[k], indent, _level + 1)}"
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(x, indent, _level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def triple_dict(t: Optional[ParameterTriple]) -> Optional[dict[str, Any]]:
    if t is None:
        return None
    return {"beta": t.beta, "beta_prime": t.beta_prime, "gamma": t.gamma}


def _root_certificate(pair, match: FamilyMatch, config: Config) -> Certificate:
    h = sqrt_commutator(pair, config)
    k = pair.F @ pair.G @ pair.F.inverse() @ pair.G.inverse()
    rep = element_report(h, config)
    want = expected_root_half_trace(match)
    sq = (h @ h).distance(k)
    hg = (h @ pair.G @ h @ pair.G).identity_residual()
    tr = abs(rep.half_trace - want)
    eps = config.eps_cert
    entries = (
        CertificateEntry("H^2 = +-[F,G]", sq, "identity", sq < eps),
        CertificateEntry("(H G)^2 = +-I", hg, "identity", hg < eps),
        CertificateEntry("|tr H|/2", tr, "trace", tr < eps,
                         f"{rep.kind}; order={rep.order}; translation={rep.translation}"),
    )
    return Certificate("root", entries)


def match_section(match: FamilyMatch, triple: ParameterTriple, config: Config,
                  certify: str = "all") -> dict[str, Any]:
    kleinian = presentation_of(match, config, "kleinian")
    abstract = presentation_of(match, config, "abstract")
    words = generator_words(match, config)
    section: dict[str, Any] = {
        "match": match.as_dict(),
        "presentation": {"name": kleinian.name, "kleinian": kleinian.text(),
                         "abstract": abstract.text()},
        "generator_words": words.as_dict(),
        "orbifold": orbifold_of(kleinian).as_dict(),
    }
    certs: list[dict[str, Any]] = []
    if certify != "none":
        pair = realize_match(match, triple.beta_prime, config)
        if certify in ("presentation", "all"):
            certs.append(certify_presentation(pair, kleinian, words, config).as_dict())
        if certify in ("geometry", "all"):
            if match.family in DISJOINT_FAMILIES:
                certs.append(_root_certificate(pair, match, config).as_dict())
            else:
                certs.append(certify_geometry(pair, match, config).as_dict())
    section["certificates"] = certs
    return section


def verdict_notes(verdict: Verdict) -> list[str]:
    """Remarks about row overlaps that a reader of the verdict should see."""
    notes = []
    if "P14" in verdict.families:
        notes.append("this triple is also the P11 formula at m=5 (gamma = 2cos(2pi/5), "
                     "beta' = 2 gamma); the P11 row itself starts at m=7, so it is reported as P14")
    return notes


def build_report(raw: Mapping[str, str], triple: ParameterTriple, verdict: Verdict,
                 config: Config, certify: str = "all") -> dict[str, Any]:
    return {
        "report_version": REPORT_VERSION,
        "tool": {"name": TOOL_NAME, "version": __version__},
        "config": config.as_dict(),
        "input": {"raw": dict(raw), "triple": triple_dict(triple),
                  "normalized": triple_dict(verdict.triple)},
        "regime": None if verdict.regime is None else
        {"kind": verdict.regime.kind, "reason": verdict.regime.reason},
        "verdict": {
            "kind": verdict.kind,
            "reason": verdict.reason,
            "families": list(verdict.families),
            "nearest": None if verdict.nearest is None else verdict.nearest.as_dict(),
            "notes": verdict_notes(verdict),
        },
        "matches": [match_section(m, verdict.triple, config, certify) for m in verdict.matches],
    }


def all_certificates_pass(report: Mapping[str, Any]) -> bool:
    return all(c["passed"] for sec in report["matches"] for c in sec["certificates"])


def render_text(report: Mapping[str, Any]) -> str:
    lines = [f"{TOOL_NAME} {report['tool']['version']} ({report['report_version']})"]
    t = report["input"]["triple"]
    lines.append("input: beta={} beta'={} gamma={}".format(
        *(format_float(t[k]) for k in ("beta", "beta_prime", "gamma"))))
    if report["regime"]:
        lines.append(f"regime: {report['regime']['kind']}")
    v = report["verdict"]
    lines.append(f"verdict: {v['kind']}" + (f" ({v['reason']})" if v["reason"] else ""))
    for note in v["notes"]:
        lines.append(f"  note: {note}")
    for sec in report["matches"]:
        m = sec["match"]
        idx = ", ".join(f"{k}={val}" for k, val in m["indices"].items())
        lines.append(f"  {m['family']} n={m['n']}" + (f" {idx}" if idx else "")
                     + f" residual={format_float(m['residual'])}")
        lines.append(f"    {sec['presentation']['kleinian']}")
        words = sec["generator_words"]
        for g, w in words["words"].items():
            lines.append(f"    {g} = {w}")
        if words["missing"]:
            lines.append(f"    no word for: {', '.join(words['missing'])}")
        lines.append(f"    orbifold: figure {sec['orbifold']['figure']} in {sec['orbifold']['space']}")
        for c in sec["certificates"]:
            status = "pass" if c["passed"] else "FAIL"
            worst = max((e["residual"] for e in c["entries"]), default=0.0)
            lines.append(f"    certificate {c['kind']}: {status} (max residual {format_float(worst)})"
                         + (" partial" if c["partial"] else ""))
    if v["nearest"]:
        n = v["nearest"]
        lines.append(f"  nearest: {n['family']} n={n['n']} residual={format_float(n['residual'])}")
    return "\n".join(lines) + "\n"
