"""Assembly of the machine-readable reports emitted by the command line."""

from __future__ import annotations

from . import __version__
from .errors import GluingMismatch, MissingHodgeBasis, NotPure
from .geometries import scenario as build_scenario
from .goldens import GOLDENS, compare
from .lefschetz import (
    component_hr,
    fiber_h2_hr,
    fiber_lefschetz,
    fiber_top_power,
    monodromy_iso_hypothesis,
)
from .linalg import rank
from .schema import digest, load, scenario_out, to_jsonable
from .snc import (
    Scenario,
    blocking,
    complex_findings,
    glue_line_bundle,
    gluing_residual,
    rho,
    validate,
)
from .weight import (
    CONVENTIONS,
    betti_numbers,
    condition_star,
    cup_nondeg_on_image_rho,
    e1_page,
    euler_check,
    fiber_hodge_numbers,
    graded_pieces,
    n1_map,
)

REPORT_SCHEMA = "snc-hodge/report/1"


def resolve(source: str, params: dict | None = None) -> Scenario:
    """``scenario:<id>`` builds a shipped scenario; anything else is a file path."""
    if source.startswith("scenario:"):
        return build_scenario(source.split(":", 1)[1], **(params or {}))
    return load(source)


def header(command: str, source: str, sc: Scenario) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "tool_version": __version__,
        "command": command,
        "input": {
            "source": source,
            "digest": digest(scenario_out(sc)),
            "scenario_id": sc.scenario_id,
            "params": to_jsonable(sc.params),
        },
        "conventions": dict(CONVENTIONS),
    }


def check(sc: Scenario) -> tuple[list[str], list[str]]:
    """All validation findings, and the blocking subset."""
    V = sc.variety
    findings = validate(V)
    block = blocking(findings)
    if not block:
        findings += complex_findings(V)
    return findings, block


def degree_record(sc: Scenario, k: int) -> dict:
    V = sc.variety
    P = graded_pieces(V, k)
    v = n1_map(V, k)
    rec = {
        "k": k,
        "e1_dims": [t.dim for t in e1_page(V, k)],
        "piece_dims": {"low": P.low.dim, "mid": P.mid.dim, "high": P.high.dim},
        "betti": P.betti,
        "n1": {"matrix": v.n1_matrix, "is_iso": v.is_iso, "witness": v.witness},
        "pure_hs": v.pure_hs,
    }
    try:
        rec["hodge_numbers"] = {f"{p},{q}": h for (p, q), h in sorted(fiber_hodge_numbers(V, k).items())}
    except NotPure as exc:
        rec["hodge_numbers"] = None
        rec["hodge_numbers_reason"] = str(exc)
    return rec


def surjectivity_record(sc: Scenario) -> dict | None:
    V = sc.variety
    l = V.n - 1
    m = V.dim2(l)
    if m == 0:
        return None
    r = rank(rho(V, l))
    return {"degree": l, "rank": r, "target_dim": m, "surjective": r == m, "ker_gamma_dim": m - r}


def analyze(sc: Scenario, source: str, degree: int | None = None) -> tuple[dict, int]:
    rep = header("analyze", source, sc)
    findings, block = check(sc)
    rep["findings"] = findings
    rep["notes"] = list(sc.notes)
    if block:
        rep["status"] = "refused: blocking validation findings"
        return rep, 3
    V = sc.variety
    ks = [degree] if degree is not None else list(range(2 * V.n + 1))
    rep["degrees"] = [degree_record(sc, k) for k in ks]
    rep["betti"] = betti_numbers(V)
    rep["euler"] = euler_check(V)
    rep["cup_nondeg_on_image_rho"] = cup_nondeg_on_image_rho(V)
    surj = surjectivity_record(sc)
    if surj is not None:
        rep["rho_surjectivity"] = surj
        if not surj["surjective"]:
            l = surj["degree"]
            rep["notes"].append(
                f"rho_{l} has rank {surj['rank']} < {surj['target_dim']} = dim H^{l} of the double loci, so it is "
                f"not surjective; Ker gamma_{l + 2} has dimension {surj['ker_gamma_dim']} and contributes to b_{l + 1}")
    if V.n == 3:
        rep["condition_star"] = condition_star(V, "sufficient", sc.ample_restrictions)
    rep["status"] = "ok"
    return rep, 0


def _component_record(P, v) -> dict:
    hr = component_hr(P, v)
    return {
        "name": P.name,
        "class": v,
        "top_power": P.top_power(v),
        "lefschetz": {"verdict": hr.lefschetz.overall, "per_power": hr.lefschetz.per_power},
        "hodge_riemann": {"verdict": hr.overall, "per_degree": hr.per_degree},
    }


def bundle(sc: Scenario, source: str, name: str, fiber: bool = False) -> tuple[dict, int]:
    rep = header("bundle", source, sc)
    findings, block = check(sc)
    rep["findings"] = findings
    if block:
        rep["status"] = "refused: blocking validation findings"
        return rep, 3
    if name not in sc.bundles:
        known = ", ".join(sorted(sc.bundles)) or "none"
        rep["status"] = f"unknown bundle {name!r}; known: {known}"
        return rep, 2
    V = sc.variety
    classes = sc.bundles[name]
    rec = {"name": name, "classes": classes, "gluing_residual": gluing_residual(V, classes)}
    try:
        L = glue_line_bundle(V, classes)
    except GluingMismatch:
        rec["glued"] = False
        rep["bundle"] = rec
        rep["status"] = "classes do not glue; no further checks"
        return rep, 0
    rec["glued"] = True
    rec["components"] = [_component_record(c, v) for c, v in zip(V.components, L.classes)]
    rec["loci"] = [_component_record(d.package, v) for d, v in zip(V.loci, L.on_loci)]
    if fiber:
        f = {"top_power": fiber_top_power(V, L)}
        lef = fiber_lefschetz(V, L)
        f["lefschetz"] = lef["lefschetz"]
        f["cup_maps"] = lef["per_power"]
        if "note" in lef:
            f["note"] = lef["note"]
        f["five_lemma_consistent"] = all(r["consistent"] for r in lef["per_power"])
        if V.n == 3:
            f["h2_hodge_riemann"] = fiber_h2_hr(V, L)
        f["monodromy_hypothesis"] = monodromy_iso_hypothesis(V, L)
        rec["fiber"] = f
    rep["bundle"] = rec
    rep["status"] = "ok"
    return rep, 0


def star(sc: Scenario, source: str, mode: str) -> tuple[dict, int]:
    rep = header("condition-star", source, sc)
    findings, block = check(sc)
    rep["findings"] = findings
    if block:
        rep["status"] = "refused: blocking validation findings"
        return rep, 3
    try:
        rep["condition_star"] = condition_star(sc.variety, mode, sc.ample_restrictions)
    except MissingHodgeBasis as exc:
        rep["status"] = f"exact mode needs explicit Hodge bases: {exc}"
        return rep, 3
    rep["status"] = "ok"
    return rep, 0


def reproduce(scenario_id: str, params: dict) -> tuple[dict, int]:
    sc = build_scenario(scenario_id, **params)
    rep = header("reproduce", f"scenario:{sc.scenario_id}", sc)
    if sc.scenario_id not in GOLDENS:
        rep["status"] = f"no goldens for {sc.scenario_id}"
        return rep, 2
    results = compare(sc)
    rep["results"] = results
    failed = [r for r in results if r["status"] == "FAIL"]
    rep["status"] = "FAIL" if failed else "PASS"
    return rep, 4 if failed else 0

