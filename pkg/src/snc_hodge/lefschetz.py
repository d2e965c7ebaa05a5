"""Lefschetz and Hodge-Riemann checks, on smooth pieces and on the smooth fiber."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InvalidParams, NotInSpan
from .linalg import (
    HERMITIAN,
    SYMMETRIC,
    Form,
    I,
    Mat,
    Subspace,
    hstack,
    kernel,
    rank,
    signature,
    vstack,
)
from .snc import CohomologyPackage, GluedLineBundle, SncVariety, gysin, rho_or_zero
from .weight import graded_pieces

INCONCLUSIVE = "inconclusive-positive-so-far"


@dataclass(frozen=True, eq=False)
class LefschetzVerdict:
    bundle: Mat
    per_power: list[dict]
    overall: bool


@dataclass(frozen=True, eq=False)
class HRVerdict:
    lefschetz: LefschetzVerdict
    per_degree: list[dict]
    overall: object  # True, False or INCONCLUSIVE


def component_lefschetz(P: CohomologyPackage, L: Mat) -> LefschetzVerdict:
    n = P.n
    rows = []
    for i in range(1, n + 1):
        M = P.power(L, n - i, i)
        r = rank(M)
        rows.append({"i": i, "matrix": M, "rank": r, "iso": M.rows == M.cols and r == M.rows})
    return LefschetzVerdict(L, rows, all(r["iso"] for r in rows))


def hr_prefactor(k: int, p: int):
    """(-1)^{k(k-1)/2} i^{2p-k}."""
    c = (1, I, -1, -I)[(2 * p - k) % 4]
    return -c if (k * (k - 1) // 2) % 2 else c


def component_hr(P: CohomologyPackage, L: Mat) -> HRVerdict:
    lef = component_lefschetz(P, L)
    n = P.n
    records = []
    decided = True
    positive = True
    for k in range(n + 1):
        if P.dim(k) == 0:
            continue
        prim = kernel(P.power(L, k, n - k + 1))
        if prim.dim == 0:
            continue
        Lk = P.power(L, k, n - k)
        G = P.pairing[k]
        for b in P.hodge[k].blocks:
            if b.dim == 0:
                continue
            rec = {"k": k, "p": b.p, "q": b.q}
            if not b.explicit:
                rec["status"] = "no explicit basis"
                decided = False
                records.append(rec)
                continue
            W = prim.intersect(b.space)
            rec["dim"] = W.dim
            if W.dim == 0:
                records.append(rec)
                continue
            B = W.basis
            c = hr_prefactor(k, b.p)
            gram = (B.T @ G @ Lk @ B.conj()).scale(c)
            sig = signature(Form(gram, HERMITIAN if not gram.is_real() else SYMMETRIC))
            rec.update({"gram": gram, "signature": sig, "positive": sig[0] == W.dim})
            positive = positive and rec["positive"]
            records.append(rec)
    if not lef.overall or not positive:
        overall = False
    elif decided:
        overall = True
    else:
        overall = INCONCLUSIVE
    return HRVerdict(lef, records, overall)


# ---------------------------------------------------------------------------
# fiber


def _loci_cup_power(V: SncVariety, L: GluedLineBundle, l: int, i: int) -> Mat:
    M = Mat.identity(V.dim2(l))
    for s in range(i):
        M = V.cup2(list(L.on_loci), l + 2 * s) @ M
    return M


def _comp_cup_power(V: SncVariety, L: GluedLineBundle, l: int, i: int) -> Mat:
    M = Mat.identity(V.dim1(l))
    for s in range(i):
        M = V.cup1(list(L.classes), l + 2 * s) @ M
    return M


def _is_iso(M: Mat) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def _assembled(maps: list[Mat], seed: int) -> Mat:
    """Block upper-triangular map on low, mid, high with random blocks above the diagonal.

    The weight filtration is preserved, so only the diagonal is determined by
    the pieces; the off-diagonal blocks stand in for the unknown extension data.
    """
    rng = random.Random(seed)
    rows = [m.rows for m in maps]
    cols = [m.cols for m in maps]
    blocks = []
    for r in range(3):
        row = []
        for c in range(3):
            if r == c:
                row.append(maps[r])
            elif r < c:
                row.append(Mat(rows[r], cols[c], [[rng.randint(-3, 3) for _ in range(cols[c])] for _ in range(rows[r])]))
            else:
                row.append(Mat.zeros(rows[r], cols[c]))
        blocks.append(hstack(row, rows[r]))
    return vstack(blocks, sum(cols))


def fiber_cup_L(V: SncVariety, L: GluedLineBundle, k: int, i: int = 1, seed: int = 0) -> dict:
    """Maps induced by cup with L^i from Gr^W H^k to Gr^W H^{k+2i} of the fiber."""
    src = graded_pieces(V, k)
    tgt = graded_pieces(V, k + 2 * i)
    findings = []

    # commuting squares with rho and gamma
    for l in (k - 1, k, k + 1):
        if V.dim1(l) == 0 and V.dim2(l) == 0:
            continue
        left = rho_or_zero(V, l + 2 * i) @ _comp_cup_power(V, L, l, i)
        right = _loci_cup_power(V, L, l, i) @ rho_or_zero(V, l)
        if left != right:
            findings.append(f"square with rho_{l} does not commute")
    for l in (k, k + 1):
        left = _comp_cup_power(V, L, l, i) @ gysin(V, l)
        right = gysin(V, l + 2 * i) @ _loci_cup_power(V, L, l - 2, i)
        if left != right:
            findings.append(f"square with gamma_{l} does not commute")

    maps = {}
    # low: Coker rho_{k-1} -> Coker rho_{k+2i-1}
    Ml = _loci_cup_power(V, L, k - 1, i)
    maps["low"] = tgt.low_coords(Ml @ src.low.basis) if src.low.dim else Mat.zeros(tgt.low.dim, 0)
    # mid: Ker rho_k / Im gamma_k -> Ker rho_{k+2i} / Im gamma_{k+2i}
    Mm = _comp_cup_power(V, L, k, i)
    img = Mm @ src.mid.basis
    if src.mid.dim and not (rho_or_zero(V, k + 2 * i) @ img).is_zero():
        findings.append("cup with L does not preserve Ker rho")
        maps["mid"] = Mat.zeros(tgt.mid.dim, src.mid.dim)
    else:
        maps["mid"] = tgt.mid_coords(img) if src.mid.dim else Mat.zeros(tgt.mid.dim, 0)
    # high: Ker gamma_{k+1} -> Ker gamma_{k+2i+1}
    Mh = _loci_cup_power(V, L, k - 1, i)
    himg = Mh @ src.high.basis
    if src.high.dim:
        try:
            maps["high"] = Subspace(tgt.high.ambient_dim, tgt.high.basis, check=False).coordinates(himg)
        except NotInSpan:
            findings.append("cup with L does not preserve Ker gamma")
            maps["high"] = Mat.zeros(tgt.high.dim, src.high.dim)
    else:
        maps["high"] = Mat.zeros(tgt.high.dim, 0)

    iso = {name: _is_iso(M) for name, M in maps.items()}
    assembled = _assembled([maps["low"], maps["mid"], maps["high"]], seed)
    assembled_iso = _is_iso(assembled)
    all_iso = all(iso.values())
    return {
        "k": k,
        "i": i,
        "maps": maps,
        "iso": iso,
        "ranks": {name: rank(M) for name, M in maps.items()},
        "all_pieces_iso": all_iso,
        "assembled_iso": assembled_iso,
        "consistent": assembled_iso or not all_iso,
        "findings": findings,
        "dims": {"source": src.dims, "target": tgt.dims},
    }


def fiber_lefschetz(V: SncVariety, L: GluedLineBundle) -> dict:
    """Piecewise sufficient test: every L^i : H^{n-i} -> H^{n+i} iso on all pieces."""
    n = V.n
    rows = [fiber_cup_L(V, L, n - i, i) for i in range(1, n + 1)]
    vacuous = all(sum(r["dims"]["source"]) == 0 and sum(r["dims"]["target"]) == 0 for r in rows)
    ok = all(r["all_pieces_iso"] for r in rows)
    verdict = True if ok else "not-established"
    out = {"per_power": rows, "lefschetz": verdict}
    if vacuous:
        out["note"] = "all relevant fiber cohomology vanishes; the Lefschetz property is vacuous here"
    elif n >= 2 and graded_pieces(V, 2).betti == 0:
        out["note"] = ("H^2 of the fiber vanishes, so c_1(L_t) = 0 in cohomology: maps through H^2 are vacuous "
                       "and the Lefschetz question is meaningless here")
    return out


def fiber_top_power(V: SncVariety, L: GluedLineBundle):
    total = 0
    for c, v in zip(V.components, L.classes):
        total = total + c.top_power(v)
    return total


def _fiber_self_product(V: SncVariety, L: GluedLineBundle, A: Mat, B: Mat) -> Mat:
    """Matrix of (a, b) -> sum over components of a_i . b_i . L_i, for 3-folds."""
    out = None
    offs = V.offsets1(2)
    for idx, (c, v) in enumerate(zip(V.components, L.classes)):
        o = offs[idx]
        a = A.block(o, o + c.dim(2), 0, A.cols)
        b = B.block(o, o + c.dim(2), 0, B.cols)
        # a . b . L = a^T P(2,4) (L b)
        term = a.T @ c.pairing[2] @ (c.cup(v, 2) @ b)
        out = term if out is None else out + term
    return out


def fiber_h2_hr(V: SncVariety, L: GluedLineBundle) -> dict:
    """The H^0 and H^2 Hodge-Riemann conditions on the fiber, for L and L^{-1}."""
    if V.n != 3:
        raise InvalidParams("the H^2 fragment is implemented for 3-fold degenerations")
    P = graded_pieces(V, 2)
    top = fiber_top_power(V, L)
    out = {"top_power": top, "b2": P.betti}
    if P.betti == 0:
        out.update({"status": "no H^2 classes", "L": {"verdict": top > 0}, "L_inverse": {"verdict": -top > 0}})
        return out
    if P.low.dim or P.high.dim:
        out["status"] = "H^2 has classes off the middle weight; fragment covers only Gr^W_2"
    B = P.mid.basis
    # linear functional alpha -> alpha . L^2
    ell = None
    offs = V.offsets1(2)
    for idx, (c, v) in enumerate(zip(V.components, L.classes)):
        o = offs[idx]
        b = B.block(o, o + c.dim(2), 0, B.cols)
        lsq = c.cup(v, 2) @ v  # L_i^2 in H^4
        term = lsq.T @ c.pairing[4] @ b
        ell = term if ell is None else ell + term
    prim = kernel(ell)
    Q = _fiber_self_product(V, L, B, B)
    Qp = prim.basis.T @ Q @ prim.basis if prim.dim else Mat.zeros(0, 0)
    blocks = [b for b in P.mid.hodge.blocks if b.dim and (b.p, b.q) != (1, 1)]
    out.update({"primitive_dim": prim.dim, "primitive_basis": B @ prim.basis, "q_primitive": Qp})
    for name, s in (("L", 1), ("L_inverse", -1)):
        t = top * s
        form = Qp.scale(-s)  # HR on (1,1): -int a^2 (sL) > 0
        sig = signature(Form(form, SYMMETRIC)) if form.rows else (0, 0, 0)
        pos = sig[0] == form.rows
        if t <= 0 or not pos:
            v = False
        elif blocks or P.low.dim or P.high.dim:
            v = INCONCLUSIVE
        else:
            v = True
        out[name] = {"top_power": t, "signature": sig, "verdict": v}
    return out


def monodromy_iso_hypothesis(V: SncVariety, L0: GluedLineBundle) -> dict:
    """Hodge-Riemann on every component and every double locus."""
    recs = []
    for c, v in zip(V.components, L0.classes):
        recs.append({"piece": c.name, "hr": component_hr(c, v).overall})
    for d, v in zip(V.loci, L0.on_loci):
        recs.append({"piece": d.package.name, "hr": component_hr(d.package, v).overall})
    vals = [r["hr"] for r in recs]
    if any(v is False for v in vals):
        verdict = False
    elif all(v is True for v in vals):
        verdict = True
    else:
        verdict = "inconclusive"
    return {"pieces": recs, "satisfied": verdict}
