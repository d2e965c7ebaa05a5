"""Oracles and helpers shared by the test modules and the acceptance run."""

import random

import sympy

from snc_hodge.geometries import synthetic_two_locus
from snc_hodge.lefschetz import (
    component_hr,
    fiber_h2_hr,
    fiber_lefschetz,
    fiber_top_power,
)
from snc_hodge.linalg import Mat, det
from snc_hodge.snc import complex_findings, glue_line_bundle, validate
from snc_hodge.weight import (
    betti_numbers,
    condition_star,
    cup_nondeg_on_image_rho,
    euler_check,
    graded_pieces,
    n1_map,
)

# ---------------------------------------------------------------------------
# signature oracle: Sturm sequences on the characteristic polynomial


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _positive_roots(f, x):
    """Roots of a squarefree f in (0, oo), by Sturm's theorem."""
    seq = sympy.sturm(sympy.Poly(f, x))
    at0 = [g.eval(0) for g in seq]
    at_inf = [g.LC() for g in seq]
    return _sign_changes(at0) - _sign_changes(at_inf)


def sturm_signature(rows):
    """(pos, neg, zero) of a real symmetric matrix via its characteristic polynomial."""
    x = sympy.symbols("x")
    n = len(rows)
    if n == 0:
        return (0, 0, 0)
    M = sympy.Matrix(rows)
    p = M.charpoly(x).as_expr()
    _, factors = sympy.sqf_list(p, x)
    pos = neg = zero = 0
    for f, m in factors:
        fp = sympy.Poly(f, x)
        while fp.eval(0) == 0:
            zero += m
            fp = sympy.Poly(sympy.quo(fp.as_expr(), x), x)
        if fp.degree() == 0:
            continue
        pp = _positive_roots(fp.as_expr(), x)
        pos += m * pp
        neg += m * (fp.degree() - pp)
    return pos, neg, zero


def rows_q(M: Mat):
    """Entries as sympy rationals."""
    return [[sympy.Rational(int(v.numerator), int(v.denominator)) for v in r] for r in M.tolist()]


# ---------------------------------------------------------------------------
# synthetic two-locus inputs


def synthetic_inputs():
    """Twenty two-locus inputs: four hand-built degenerate ones, the rest random."""
    rng = random.Random(7)
    out = []
    hyp = Mat.from_rows([[0, 1], [1, 0]])
    # isotropic image inside a hyperbolic plane
    out.append(("isotropic", synthetic_two_locus([hyp], [Mat.from_rows([[1], [0]])], [Mat.from_rows([[0], [0]])])))
    # image zero
    out.append(("zero", synthetic_two_locus([hyp], [Mat.from_rows([[0], [0]])], [Mat.from_rows([[0], [0]])])))
    # full hyperbolic plane
    out.append(("full", synthetic_two_locus([hyp], [Mat.from_rows([[1], [0]])], [Mat.from_rows([[0], [1]])])))
    # two loci whose images cancel in the cup form
    out.append(("two-loci-null", synthetic_two_locus(
        [Mat.identity(1), Mat.identity(1).scale(-1)], [Mat.vector([1]), Mat.vector([1])],
        [Mat.vector([0]), Mat.vector([0])])))
    while len(out) < 20:
        t = rng.randint(1, 2)
        grams, A, B = [], [], []
        rA, rB = rng.randint(1, 2), rng.randint(1, 2)
        for _ in range(t):
            d = rng.randint(1, 3)
            while True:
                G = [[0] * d for _ in range(d)]
                for i in range(d):
                    for j in range(i, d):
                        G[i][j] = G[j][i] = rng.randint(-2, 2)
                Gm = Mat.from_rows(G)
                if det(Gm) != 0:
                    break
            grams.append(Gm)
            A.append(Mat.from_rows([[rng.randint(-1, 1) for _ in range(rA)] for _ in range(d)]))
            B.append(Mat.from_rows([[rng.randint(-1, 1) for _ in range(rB)] for _ in range(d)]))
        out.append((f"random-{len(out)}", synthetic_two_locus(grams, A, B)))
    return out


# ---------------------------------------------------------------------------
# basis-independent verdicts


def verdicts(V, bundle, ample):
    """Every basis-independent answer the library gives for V."""
    out = {
        "valid": validate(V) == [] and complex_findings(V) == [],
        "betti": betti_numbers(V),
        "pieces": [graded_pieces(V, k).dims for k in range(2 * V.n + 1)],
        "n1": [n1_map(V, k).is_iso for k in range(2 * V.n + 1)],
        "cup_nondeg": cup_nondeg_on_image_rho(V)["nondegenerate"],
        "euler": euler_check(V)["ok"],
    }
    L = glue_line_bundle(V, bundle)
    out["top"] = fiber_top_power(V, L)
    out["lefschetz"] = fiber_lefschetz(V, L)["lefschetz"]
    out["component_hr"] = [component_hr(P, v).overall for P, v in zip(V.components, bundle)]
    if V.n == 3:
        h = fiber_h2_hr(V, L)
        out["h2_hr"] = (h["L"]["verdict"], h["L_inverse"]["verdict"])
        out["star"] = condition_star(V, "sufficient", ample)["holds"]
    return out


def invertible(rng, n):
    while True:
        P = Mat.from_rows([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], n)
        if det(P) != 0:
            return P
