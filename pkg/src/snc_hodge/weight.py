"""Weight graded pieces of the limit H^k for a two-layer SNC degeneration."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidParams, MissingHodgeBasis, NotPure
from .hodge import HodgeGrading, induced_hodge, quotient_hodge, twist
from .linalg import (
    HERMITIAN,
    SYMMETRIC,
    Form,
    I,
    Mat,
    Subspace,
    det,
    hstack,
    image,
    kernel,
    quotient_basis,
    rank,
    signature,
    solve,
)
from .snc import SncVariety, gysin, rho_or_zero

CONVENTIONS = {
    "rho": "rho = delta1^* - delta2^*, delta1 into the higher-indexed component",
    "two_pi_i": "all (2 pi i) factors dropped; Tate twists are labels only",
    "q_w3": "Q_W3(a, b) = -i <a, conj b> on the (2,1) block of Gr^W_3",
    "q_w2": "Q_W2(a, b) = -<a, conj b> on the (1,1) block of Ker gamma_4",
    "hr_prefactor": "(-1)^(k(k-1)/2) * i^(2p-k) * int a . conj b . L^(n-k)",
    "pure_hs": "true means N^[1] is an isomorphism, which implies a pure Hodge structure; false means the criterion is not established",
}


@dataclass(frozen=True)
class E1Term:
    label: str
    dim: int
    hodge: HodgeGrading


def e1_page(V: SncVariety, k: int) -> tuple[E1Term, E1Term, E1Term]:
    """E_1^{1,k-1}, E_1^{0,k}, E_1^{-1,k+1}."""
    if not 0 <= k <= 2 * V.n:
        z = HodgeGrading(k, 0)
        return (E1Term("E1^{1,k-1}", 0, z), E1Term("E1^{0,k}", 0, z), E1Term("E1^{-1,k+1}", 0, z))
    h2 = V.hodge2(k - 1)
    return (
        E1Term("E1^{1,k-1}", V.dim2(k - 1), h2),
        E1Term("E1^{0,k}", V.dim1(k), V.hodge1(k)),
        E1Term("E1^{-1,k+1}", V.dim2(k - 1), twist(h2, 1)),
    )


@dataclass(frozen=True, eq=False)
class Piece:
    """A graded piece represented by basis columns in its ambient E_1 term.

    For quotient pieces the columns are representatives; ``hodge`` lives in
    the same ambient coordinates.
    """

    name: str
    weight: int
    ambient_dim: int
    basis: Mat
    hodge: HodgeGrading

    @property
    def dim(self) -> int:
        return self.basis.cols

    def h(self, p: int, q: int) -> int:
        return self.hodge.dim_of(p, q)


@dataclass(frozen=True, eq=False)
class GradedPieces:
    k: int
    low: Piece   # Gr^W_{k-1} = Coker rho_{k-1}, inside H^{k-1}(X^(2))
    mid: Piece   # Gr^W_k = Ker rho_k / Im gamma_k, inside H^k(X^(1))
    high: Piece  # Gr^W_{k+1} = Ker gamma_{k+1}, inside H^{k-1}(X^(2)), twisted
    image_rho_low: Subspace   # Im rho_{k-1}, the relation space for low
    image_gamma_mid: Subspace  # Im gamma_k, the relation space for mid
    mid_gram: Mat | None = None       # cup form on mid when k = n
    duality_gram: Mat | None = None   # low x high via the X^(2) cup form when k = n

    @property
    def dims(self) -> tuple[int, int, int]:
        return self.low.dim, self.mid.dim, self.high.dim

    @property
    def betti(self) -> int:
        return sum(self.dims)

    def low_coords(self, v: Mat) -> Mat:
        """Coordinates in Coker rho_{k-1} of vectors of H^{k-1}(X^(2))."""
        return _quotient_coords(self.low.basis, self.image_rho_low.basis, v)

    def mid_coords(self, v: Mat) -> Mat:
        """Coordinates in Gr^W_k of vectors of Ker rho_k."""
        return _quotient_coords(self.mid.basis, self.image_gamma_mid.basis, v)


def _quotient_coords(Q: Mat, R: Mat, v: Mat) -> Mat:
    if Q.cols == 0:
        return Mat.zeros(0, v.cols)
    c = solve(hstack([Q, R], Q.rows), v)
    return c.block(0, Q.cols, 0, v.cols)


def graded_pieces(V: SncVariety, k: int) -> GradedPieces:
    return V.cached(("pieces", k), lambda: _graded_pieces(V, k))


def _graded_pieces(V: SncVariety, k: int) -> GradedPieces:
    n = V.n
    # low: Coker rho_{k-1}
    r_low = rho_or_zero(V, k - 1)
    im_low = image(r_low)
    d2 = V.dim2(k - 1)
    low_basis = quotient_basis(Subspace.full(d2), im_low).basis
    low_hodge = induced_hodge(r_low, V.hodge1(k - 1), V.hodge2(k - 1), "cokernel")
    low = Piece("low", k - 1, d2, low_basis, low_hodge)

    # mid: Ker rho_k / Im gamma_k
    r_mid = rho_or_zero(V, k)
    g_mid = gysin(V, k)
    ker = kernel(r_mid)
    im_g = image(g_mid)
    mid_basis = quotient_basis(ker, im_g).basis
    ker_hodge = induced_hodge(r_mid, V.hodge1(k), V.hodge2(k), "kernel")
    img_hodge = induced_hodge(g_mid, twist(V.hodge2(k - 2), 1), V.hodge1(k), "image")
    mid_hodge = quotient_hodge(ker_hodge, img_hodge)
    mid = Piece("mid", k, V.dim1(k), mid_basis, mid_hodge)

    # high: Ker gamma_{k+1}, weight k+1 after the twist
    g_high = gysin(V, k + 1)
    high_basis = kernel(g_high).basis
    high_hodge = induced_hodge(g_high, twist(V.hodge2(k - 1), 1), V.hodge1(k + 1), "kernel")
    high = Piece("high", k + 1, d2, high_basis, high_hodge)

    mid_gram = duality = None
    if k == n:
        if mid.dim:
            mid_gram = mid_basis.T @ V.pairing1(n) @ mid_basis
        else:
            mid_gram = Mat.zeros(0, 0)
        duality = low_basis.T @ V.pairing2(n - 1) @ high_basis if d2 else Mat.zeros(low.dim, high.dim)
    return GradedPieces(k, low, mid, high, im_low, im_g, mid_gram, duality)


def betti_fiber(V: SncVariety, k: int) -> int:
    return graded_pieces(V, k).betti


def betti_numbers(V: SncVariety) -> list[int]:
    return [betti_fiber(V, k) for k in range(2 * V.n + 1)]


def euler_check(V: SncVariety) -> dict:
    """Alternating Betti sum against chi(X^(1)) - 2 chi(X^(2)).

    Each H^{k-1}(X^(2)) enters the E_1 page twice (once twisted), hence the
    factor 2.
    """
    lhs = sum((-1) ** k * b for k, b in enumerate(betti_numbers(V)))
    chi1 = sum(c.euler() for c in V.components)
    chi2 = sum(d.package.euler() for d in V.loci)
    rhs = chi1 - 2 * chi2
    return {"fiber_euler": lhs, "chi_components": chi1, "chi_loci": chi2, "predicted": rhs, "ok": lhs == rhs}


# ---------------------------------------------------------------------------
# N^[1]


@dataclass(frozen=True, eq=False)
class MonodromyVerdict:
    k: int
    n1_matrix: Mat
    is_iso: bool
    pure_hs: bool
    witness: dict = field(default_factory=dict)


def n1_map(V: SncVariety, k: int) -> MonodromyVerdict:
    """Ker gamma_{k+1} -> H^{k-1}(X^(2)) -> Coker rho_{k-1} in piece bases."""
    P = graded_pieces(V, k)
    M = P.low_coords(P.high.basis) if P.high.dim else Mat.zeros(P.low.dim, 0)
    lo, hi = P.low.dim, P.high.dim
    if lo != hi:
        return MonodromyVerdict(k, M, False, False, {"reason": f"high dim {hi} ≠ low dim {lo}"})
    d = det(M) if lo else 1
    if d:
        return MonodromyVerdict(k, M, True, True, {"det": d})
    K = kernel(M)
    return MonodromyVerdict(k, M, False, False, {"det": 0, "kernel_vector": K.basis.select_cols([0])})


def cup_nondeg_on_image_rho(V: SncVariety) -> dict:
    """Cup form of X^(2) restricted to Im rho_{n-1}; cross-checked against N^[1]."""
    n = V.n
    R = image(rho_or_zero(V, n - 1)).basis
    G = R.T @ V.pairing2(n - 1) @ R if R.cols else Mat.zeros(0, 0)
    nondeg = rank(G) == G.rows
    iso = n1_map(V, n).is_iso
    if nondeg != iso:
        raise AssertionError("cup non-degeneracy on Im rho disagrees with the N^[1] verdict")
    return {"nondegenerate": nondeg, "gram": G, "dim": R.cols, "rank": rank(G), "n1_iso": iso}


# ---------------------------------------------------------------------------
# Lefschetz compatibility and Hodge numbers


def _locus_cup(V: SncVariety, L: Mat, l: int) -> Mat:
    return V.cup2(V.split2(L, 2), l)


def lefschetz_pieces(V: SncVariety, L: Mat) -> list[Subspace]:
    """L^r P^{m-2r} inside H^m(X^(2)), m = n-1, for r = 0, 1, ..."""
    m = V.n - 1
    for t, (d, v) in enumerate(zip(V.loci, V.split2(L, 2))):
        if not d.package.is_ample(v):
            raise InvalidParams(f"class on locus {t} is not flagged ample")
    out = []
    for r in range(m // 2 + 1):
        j = m - 2 * r
        # primitive P^j = Ker L^{m-j+1} on H^j
        Lp = Mat.identity(V.dim2(j))
        for s in range(m - j + 1):
            Lp = _locus_cup(V, L, j + 2 * s) @ Lp
        prim = kernel(Lp)
        Lr = Mat.identity(V.dim2(j))
        for s in range(r):
            Lr = _locus_cup(V, L, j + 2 * s) @ Lr
        out.append(image(Lr @ prim.basis) if prim.dim else Subspace(V.dim2(m)))
    return out


def lefschetz_compatible(V: SncVariety, L: Mat, W: Subspace) -> bool:
    pieces = lefschetz_pieces(V, L)
    return sum(P.intersect(W).dim for P in pieces) == W.dim


def fiber_hodge_numbers(V: SncVariety, k: int) -> dict[tuple[int, int], int]:
    v = n1_map(V, k)
    if not v.is_iso:
        raise NotPure(f"N^[1] is not an isomorphism in degree {k}", witness=v.witness)
    P = graded_pieces(V, k)
    out = {}
    for p in range(k + 1):
        q = k - p
        h = P.low.h(p, k - 1 - p) + P.mid.h(p, q) + P.high.h(p, k + 1 - p)
        if h:
            out[(p, q)] = h
    if sum(out.values()) != P.betti:
        raise AssertionError("Hodge numbers do not add up to the Betti number")
    for (p, q), h in out.items():
        if out.get((q, p), 0) != h:
            raise AssertionError(f"h^{p},{q} != h^{q},{p}")
    return out


# ---------------------------------------------------------------------------
# condition (*)


def _exact_q_w3(V: SncVariety) -> dict:
    P = graded_pieces(V, 3)
    b = P.mid.hodge.block(2, 1)
    if b is None or b.dim == 0:
        return {"method": "exact", "positive_definite": True, "dim": 0, "signature": (0, 0, 0)}
    if not b.explicit:
        raise MissingHodgeBasis("(2,1) block of Gr^W_3 has no explicit basis")
    B = b.space.basis
    G = (B.T @ V.pairing1(3) @ B.conj()).scale(-I)
    sig = signature(Form(G, HERMITIAN))
    return {"method": "exact", "positive_definite": sig[0] == G.rows, "dim": G.rows, "signature": sig, "gram": G}


def _exact_q_w2(V: SncVariety) -> dict:
    P = graded_pieces(V, 3)
    b = P.high.hodge.block(2, 2)  # (1,1) before the twist
    if b is None or b.dim == 0:
        return {"method": "exact", "positive_definite": True, "dim": 0, "signature": (0, 0, 0)}
    if not b.explicit:
        raise MissingHodgeBasis("(1,1) block of Ker gamma_4 has no explicit basis")
    B = b.space.basis
    G = (B.T @ V.pairing2(2) @ B.conj()).scale(-1)
    kind = SYMMETRIC if G.is_real() else HERMITIAN
    sig = signature(Form(G, kind))
    return {"method": "exact", "positive_definite": sig[0] == G.rows, "dim": G.rows, "signature": sig, "gram": G}


def _sufficient_q_w3(V: SncVariety) -> dict:
    h01 = sum(c.h(0, 1) for c in V.components)
    return {"method": "sufficient", "h01_components": h01, "passes": h01 == 0}


def _sufficient_q_w2(V: SncVariety, ample_restrictions: list[Mat] | None) -> dict:
    if not ample_restrictions:
        return {"method": "sufficient", "passes": False, "reason": "no ample restrictions designated"}
    B = hstack(list(ample_restrictions), V.dim2(2))
    V2 = Subspace.span(B)
    im = image(rho_or_zero(V, 2))
    h11 = V.hodge2(2).block(1, 1)
    checks = {
        "in_image_rho2": im.contains(V2),
        "type_11": h11 is not None and (not h11.explicit or h11.space.contains(V2)),
        "dim_is_h0": V2.dim == V.dim2(0),
    }
    G = V2.basis.T @ V.pairing2(2) @ V2.basis
    sig = signature(Form(G, SYMMETRIC)) if G.rows else (0, 0, 0)
    checks["gram_positive"] = sig[0] == G.rows
    return {"method": "sufficient", "passes": all(checks.values()), "checks": checks, "signature": sig, "gram": G,
            "dim": V2.dim}


def condition_star(V: SncVariety, mode: str = "sufficient", ample_restrictions: list[Mat] | None = None) -> dict:
    """Positivity of Q_W3 and Q_W2 for a 3-fold degeneration.

    Exact Grams win whenever they can be built; sufficient criteria are then
    reported as corroboration.  A failed sufficient criterion gives
    "inconclusive", never a negative verdict.
    """
    if V.n != 3:
        raise InvalidParams("condition (*) concerns 3-fold degenerations")
    if mode not in ("exact", "sufficient"):
        raise InvalidParams(f"unknown mode {mode!r}")
    out = {"mode": mode, "conventions": {"q_w3": CONVENTIONS["q_w3"], "q_w2": CONVENTIONS["q_w2"]}}
    for name, exact, suff in (
        ("q_w3", _exact_q_w3, lambda: _sufficient_q_w3(V)),
        ("q_w2", _exact_q_w2, lambda: _sufficient_q_w2(V, ample_restrictions)),
    ):
        if mode == "exact":
            rec = exact(V)
            rec["verdict"] = rec["positive_definite"]
        else:
            s = suff()
            try:
                rec = exact(V)
                rec["verdict"] = rec["positive_definite"]
                rec["corroboration"] = s
            except MissingHodgeBasis:
                rec = s
                rec["verdict"] = True if s["passes"] else "inconclusive"
        out[name] = rec
    verdicts = (out["q_w3"]["verdict"], out["q_w2"]["verdict"])
    if all(v is True for v in verdicts):
        out["holds"] = True
    elif any(v is False for v in verdicts):
        out["holds"] = False
    else:
        out["holds"] = "inconclusive"
    return out
