"""Cohomology packages and SNC scenarios with full cup tables."""

from __future__ import annotations

import inspect
import itertools
from dataclasses import dataclass, replace

from .errors import InvalidParams
from .hodge import Block, HodgeGrading, dims_only, direct_sum, pure_type
from .linalg import Mat, Subspace, block_diag, det, hstack, inverse, rank, solve, vstack
from .snc import CohomologyPackage, DoubleLocus, Scenario, SncVariety


def _fill_pairings(n: int, dims, pairing: dict) -> dict:
    out = dict(pairing)
    for l in range(2 * n + 1):
        if dims[l] and l not in out and (2 * n - l) in out:
            sign = (-1) ** (l * (2 * n - l))
            out[l] = out[2 * n - l].T.scale(sign)
    return out


def _default_hodge(n: int, dims) -> tuple[HodgeGrading, ...]:
    out = []
    for l, d in enumerate(dims):
        out.append(pure_type(l, d) if l % 2 == 0 else HodgeGrading(l, 0))
    return tuple(out)


def make_package(name, n, dims, pairing, cup2=None, hodge=None, ample=(), labels=None, unit=None) -> CohomologyPackage:
    dims = tuple(dims)
    if unit is None and dims[0] == 1:
        unit = Mat.vector([1])
    return CohomologyPackage(
        name=name,
        n=n,
        dims=dims,
        hodge=hodge if hodge is not None else _default_hodge(n, dims),
        pairing=_fill_pairings(n, dims, pairing),
        cup2=cup2,
        ample=tuple(ample),
        labels=labels or {},
        unit=unit,
    )


# ---------------------------------------------------------------------------
# basic pieces


def product_proj(*ns: int, names: tuple[str, ...] | None = None) -> CohomologyPackage:
    """P^{n_1} x ... x P^{n_r} with hyperplane classes h_1..h_r."""
    if not ns or any(x < 1 for x in ns):
        raise InvalidParams("product_proj needs factors of dimension >= 1")
    r = len(ns)
    N = sum(ns)
    names = names or (("h",) if r == 1 else tuple(f"h{i + 1}" for i in range(r)))
    mons = {}
    for d in range(N + 1):
        ms = [e for e in itertools.product(*(range(x + 1) for x in ns)) if sum(e) == d]
        mons[d] = sorted(ms, reverse=True)
    dims = []
    for l in range(2 * N + 1):
        dims.append(len(mons[l // 2]) if l % 2 == 0 else 0)
    pairing = {}
    for d in range(N + 1):
        top = tuple(ns)
        rows = [[1 if tuple(a + b for a, b in zip(e, f)) == top else 0 for f in mons[N - d]] for e in mons[d]]
        pairing[2 * d] = Mat.from_rows(rows, len(mons[N - d]))
    cup2 = {}
    for d in range(N):
        tabs = []
        for b in range(r):
            index = {e: i for i, e in enumerate(mons[d + 1])}
            M = [[0] * len(mons[d]) for _ in mons[d + 1]]
            for j, e in enumerate(mons[d]):
                f = tuple(x + (1 if i == b else 0) for i, x in enumerate(e))
                if f in index:
                    M[index[f]][j] = 1
            tabs.append(Mat.from_rows(M, len(mons[d])))
        cup2[2 * d] = tuple(tabs)

    def mon_name(e):
        parts = []
        for nm, x in zip(names, e):
            if x == 1:
                parts.append(nm)
            elif x > 1:
                parts.append(f"{nm}^{x}")
        return "*".join(parts) or "1"

    labels = {2 * d: tuple(mon_name(e) for e in mons[d]) for d in range(N + 1)}
    ample = tuple(Mat.unit(r, b) for b in range(r))
    name = "x".join(f"P{x}" for x in ns)
    return make_package(name, N, dims, pairing, cup2, ample=ample, labels=labels)


def hirzebruch(m: int, suffix: str = "") -> CohomologyPackage:
    """F_m with h^2 = -m, h.f = 1, f^2 = 0."""
    if m < 0:
        raise InvalidParams("hirzebruch needs m >= 0")
    G = Mat.from_rows([[-m, 1], [1, 0]])
    cup2 = {
        0: (Mat.from_rows([[1], [0]]), Mat.from_rows([[0], [1]])),
        2: (G.select_rows([0]), G.select_rows([1])),
    }
    labels = {0: ("1",), 2: (f"h{suffix}", f"f{suffix}"), 4: ("pt",)}
    # nef cone spanned by f and h + m f
    ample = (Mat.vector([0, 1]), Mat.vector([1, m]))
    return make_package(f"F{m}{suffix}", 2, (1, 0, 2, 0, 1), {0: Mat.identity(1), 2: G}, cup2, ample=ample, labels=labels)


def disjoint_union(pkgs: list[CohomologyPackage], name: str | None = None) -> CohomologyPackage:
    n = pkgs[0].n
    if any(p.n != n for p in pkgs):
        raise InvalidParams("disjoint union of packages of different dimensions")
    dims = tuple(sum(p.dim(l) for p in pkgs) for l in range(2 * n + 1))
    pairing = {}
    for l in range(2 * n + 1):
        if dims[l]:
            pairing[l] = block_diag([p.pairing[l] if p.dim(l) else Mat.zeros(0, 0) for p in pkgs])
    cup2 = None
    if all(p.cup2 is not None for p in pkgs):
        cup2 = {}
        for l in range(2 * n - 1):
            tabs = []
            for idx, p in enumerate(pkgs):
                for b in range(p.dim(2)):
                    blocks = []
                    for jdx, q in enumerate(pkgs):
                        if jdx == idx and l in p.cup2:
                            blocks.append(p.cup2[l][b])
                        else:
                            blocks.append(Mat.zeros(q.dim(l + 2), q.dim(l)))
                    tabs.append(block_diag(blocks))
            cup2[l] = tuple(tabs)
    hodge = tuple(direct_sum([p.hodge[l] for p in pkgs], l) for l in range(2 * n + 1))
    ample = []
    off = 0
    for p in pkgs:
        for a in p.ample:
            col = [0] * dims[2]
            for i, x in enumerate(a.col(0)):
                col[off + i] = x
            ample.append(Mat.vector(col))
        off += p.dim(2)
    unit = vstack([p.unit for p in pkgs], 1)
    labels = {}
    for l in range(2 * n + 1):
        labels[l] = tuple(f"{p.name}:{p.label(l, i)}" for p in pkgs for i in range(p.dim(l)))
    return make_package(name or "+".join(p.name for p in pkgs), n, dims, pairing, cup2, hodge, ample, labels, unit)


def abstract_package(name: str, n: int, even_dims: dict[int, int], pairings: dict[int, Mat], ample=()) -> CohomologyPackage:
    """Even-degree package with given Poincare Grams and no cup tables."""
    dims = [even_dims.get(l, 0) if l % 2 == 0 else 0 for l in range(2 * n + 1)]
    return make_package(name, n, dims, pairings, None, ample=ample)


def k3_surface(name: str, algebraic_gram: Mat, algebraic_labels: tuple[str, ...], ample=()) -> CohomologyPackage:
    """K3 lattice over Q: algebraic classes, padding t-classes (square -1), a positive plane u1, u2.

    The (1,1) block is the span of the first 20 coordinates; the (2,0) and
    (0,2) blocks are carried as counts and live over the span of u1, u2.
    """
    r = algebraic_gram.rows
    if r > 20:
        raise InvalidParams("at most 20 algebraic classes on a K3")
    G = block_diag([algebraic_gram, Mat.identity(20 - r).scale(-1), Mat.identity(2)])
    cup2 = {
        0: tuple(Mat.unit(22, b) for b in range(22)),
        2: tuple(G.select_rows([b]) for b in range(22)),
    }
    h11 = Subspace(22, Mat.identity(22).select_cols(range(20)), check=False)
    hodge = (
        pure_type(0, 1),
        HodgeGrading(1, 0),
        HodgeGrading(2, 22, (Block(2, 0, 1), Block(1, 1, 20, h11), Block(0, 2, 1))),
        HodgeGrading(3, 0),
        pure_type(4, 1),
    )
    labels = {2: tuple(algebraic_labels) + tuple(f"t{i + 1}" for i in range(20 - r)) + ("u1", "u2"), 0: ("1",), 4: ("pt",)}
    return make_package(name, 2, (1, 0, 22, 0, 1), {0: Mat.identity(1), 2: G}, cup2, hodge, ample, labels)


def k3_anticanonical_p1cubed() -> CohomologyPackage:
    gram = Mat.from_rows([[0, 2, 2], [2, 0, 2], [2, 2, 0]])
    ample = tuple(Mat.unit(22, i) for i in range(3))
    return k3_surface("D", gram, ("f1", "f2", "f3"), ample)


def quartic_k3() -> CohomologyPackage:
    return k3_surface("D", Mat.from_rows([[4]]), ("eta",), (Mat.unit(22, 0),))


def _symplectic(g: int) -> Mat:
    if g == 0:
        return Mat.zeros(0, 0)
    Z, E = Mat.zeros(g, g), Mat.identity(g)
    return vstack([hstack([Z, E]), hstack([E.scale(-1), Z])])


def hypersurface3(name: str, degree: int, h21: int, h30: int = 0) -> CohomologyPackage:
    """Smooth hypersurface 3-fold in P^4 with h^{1,1} = 1: classes H, line class l."""
    b3 = 2 * (h21 + h30)
    dims = (1, 0, 1, b3, 1, 0, 1)
    pairing = {0: Mat.identity(1), 2: Mat.identity(1), 3: _symplectic(b3 // 2)}
    cup2 = {
        0: (Mat.identity(1),),
        1: (Mat.zeros(b3, 0),),
        2: (Mat.from_rows([[degree]]),),
        3: (Mat.zeros(0, b3),),
        4: (Mat.identity(1),),
    }
    hodge = list(_default_hodge(3, dims))
    hodge[3] = dims_only(3, b3, {(3, 0): h30, (2, 1): h21, (1, 2): h21, (0, 3): h30})
    labels = {0: ("1",), 2: ("H",), 4: ("l",), 6: ("pt",)}
    return make_package(name, 3, dims, pairing, cup2, tuple(hodge), (Mat.identity(1),), labels)


def quintic3() -> CohomologyPackage:
    return hypersurface3("quintic", 5, 101, 1)


def quartic3() -> CohomologyPackage:
    return hypersurface3("quartic", 4, 30)


def quadric3(name: str = "Q") -> CohomologyPackage:
    return hypersurface3(name, 2, 0)


def projective3() -> CohomologyPackage:
    return product_proj(3)


# ---------------------------------------------------------------------------
# blow-ups of 3-folds along disjoint curves


@dataclass(frozen=True)
class Curve:
    intersections: tuple  # alpha . C for each degree-2 basis class alpha
    genus: int
    normal_degree: int
    name: str = "C"


def blowup3fold_along_curves(P: CohomologyPackage, curves: list[Curve], ample=(), name: str | None = None) -> CohomologyPackage:
    """Blow-up of a 3-fold along disjoint smooth curves.

    New classes: E_i in H^2, 2 g_i classes in H^3 (counts only), fibre e_i in H^4.
    Products: mu*a . E_i = (a . C_i) e_i, E_i^2 = -mu*[C_i] + deg N_i e_i,
    E_i . e_j = -delta_ij, mu*a . e_i = 0, E_i . E_j = 0 for i != j.
    """
    if P.n != 3:
        raise InvalidParams("blow-up builder handles 3-folds")
    if P.dim(1) or P.dim(5):
        raise InvalidParams("blow-up builder needs H^1 = H^5 = 0")
    if P.cup2 is None:
        raise InvalidParams("blow-up builder needs cup tables")
    m = len(curves)
    r, s = P.dim(2), P.dim(4)
    G24 = P.pairing[2]
    for c in curves:
        if len(c.intersections) != r:
            raise InvalidParams(f"curve {c.name}: expected {r} intersection numbers")
    classes = [solve(G24, Mat.vector(list(c.intersections))) for c in curves]  # [C_i] in H^4(P)
    dims = (1, 0, r + m, P.dim(3) + sum(2 * c.genus for c in curves), s + m, 0, 1)

    pairing = {
        0: P.pairing[0],
        2: block_diag([G24, Mat.identity(m).scale(-1)]),
        3: block_diag([P.pairing[3] if P.dim(3) else Mat.zeros(0, 0)] + [_symplectic(c.genus) for c in curves]),
    }
    # H^0 -> H^2
    t0 = tuple(Mat.unit(r + m, b) for b in range(r + m))
    # H^2 -> H^4
    t2 = []
    for b in range(r):
        base = P.cup2[2][b]  # s x r
        M = [[0] * (r + m) for _ in range(s + m)]
        for i in range(s):
            for j in range(r):
                M[i][j] = base[i, j]
        for k, c in enumerate(curves):
            M[s + k][r + k] = c.intersections[b]
        t2.append(Mat.from_rows(M, r + m))
    for k, c in enumerate(curves):
        M = [[0] * (r + m) for _ in range(s + m)]
        for j in range(r):
            M[s + k][j] = c.intersections[j]
        for i in range(s):
            M[i][r + k] = -classes[k][i, 0]
        M[s + k][r + k] = c.normal_degree
        t2.append(Mat.from_rows(M, r + m))
    # H^4 -> H^6
    G = pairing[2]
    t4 = tuple(G.select_rows([b]) for b in range(r + m))
    b3 = dims[3]
    cup2 = {0: t0, 1: tuple(Mat.zeros(b3, 0) for _ in range(r + m)), 2: tuple(t2),
            3: tuple(Mat.zeros(0, b3) for _ in range(r + m)), 4: t4}
    h3 = [P.hodge[3]] + [dims_only(3, 2 * c.genus, {(2, 1): c.genus, (1, 2): c.genus}) for c in curves]
    hodge = list(_default_hodge(3, dims))
    hodge[3] = direct_sum(h3, 3)
    labels = {
        0: ("1",),
        2: tuple(P.label(2, i) for i in range(r)) + tuple(f"E{k + 1}" for k in range(m)),
        4: tuple(P.label(4, i) for i in range(s)) + tuple(f"e{k + 1}" for k in range(m)),
        6: ("pt",),
    }
    return make_package(name or f"Bl({P.name})", 3, dims, pairing, cup2, tuple(hodge), ample, labels)


# ---------------------------------------------------------------------------
# scenarios


def _pad(v: list, n: int) -> Mat:
    return Mat.vector(list(v) + [0] * (n - len(v)))


def _cols(vectors: list[Mat]) -> Mat:
    return hstack(vectors, vectors[0].rows)


def hopf_f1() -> Scenario:
    """Two copies of F_1 meeting along two sections C1, C2.

    C1 is the negative section h1 in the first copy and h2 + f2 in the second;
    C2 is h1 + f1 in the first and h2 in the second.
    """
    T, E = hirzebruch(1, "1"), hirzebruch(1, "2")
    curves = disjoint_union([product_proj(1, names=("pt",)), product_proj(1, names=("pt",))], "C1+C2")
    curves = _rename(curves, "C1+C2", {0: ("1_C1", "1_C2"), 2: ("pt_C1", "pt_C2")})
    ones = Mat.from_rows([[1], [1]])
    # rows C1, C2; columns h, f
    on_T = Mat.from_rows([[-1, 1], [0, 1]])
    on_E = Mat.from_rows([[0, 1], [-1, 1]])
    locus = DoubleLocus(curves, (0, 1), {0: ones, 2: on_E}, {0: ones, 2: on_T}, orientation=-1)
    V = SncVariety(2, [T, E], [locus], name="hopf-f1")
    sc = Scenario(V, scenario_id="hopf-f1")
    sc.bundles["L"] = hopf_bundle(1, 2)
    sc.notes.append("locus orientation -1 reproduces the printed restriction matrix")
    return sc


def _rename(p: CohomologyPackage, name: str, labels: dict) -> CohomologyPackage:
    new = dict(p.labels)
    new.update(labels)
    return replace(p, name=name, labels=new)


def hopf_bundle(a1: int, a2: int) -> list[Mat]:
    return [Mat.vector([a1, a2]), Mat.vector([-a1, a2 - a1])]


def _T_matrix(a: int) -> Mat:
    """Action of the gluing automorphism on span{f1, f2, f3} of the K3."""
    return Mat.from_cols([
        [1, 0, 0],
        [4 * a * a + 2 * a, 1 + 2 * a, -2 * a],
        [4 * a * a - 2 * a, 2 * a, 1 - 2 * a],
    ])


def hashimoto_sano(a: int = 1, genus_last: int | None = None) -> Scenario:
    """X1 = blow-up of P1^3 along C_1..C_{a+1} on the K3 D, X2 = P1^3, glued along D.

    ``genus_last`` sizes the H^3 contribution of C_{a+1}.  When unset, that
    contribution is left out and b_3 is reported as parameterized by it; no
    other verdict depends on it.
    """
    if not isinstance(a, int) or a < 1:
        raise InvalidParams("hashimoto_sano needs an integer a >= 1")
    P = product_proj(1, 1, 1, names=("F1", "F2", "F3"))
    D = k3_anticanonical_p1cubed()
    Gf = Mat.from_rows([[0, 2, 2], [2, 0, 2], [2, 2, 0]])
    T = _T_matrix(a)
    Tinv = inverse(T)
    s = Mat.vector([1, 1, 1])
    # class of C_{a+1} on the strict transform of D, in restricted coordinates
    c_last = (Tinv @ s).scale(2) + s.scale(2) - Mat.vector([a, 0, 0])
    f1 = Mat.vector([1, 0, 0])

    def curve(c: Mat, name: str, genus: int | None = None) -> Curve:
        inter = tuple(int((Gf @ c)[i, 0]) for i in range(3))
        csq = int((c.T @ Gf @ c)[0, 0])
        sc = int((s.T @ Gf @ c)[0, 0])
        # adjunction on the K3 and N = N_{C/D} + O(D)|_C with D|_D = 2(f1+f2+f3)
        g = csq // 2 + 1 if genus is None else genus
        return Curve(inter, g, csq + 2 * sc, name)

    if genus_last is not None and genus_last < 0:
        raise InvalidParams("genus_last must be >= 0")
    last = curve(c_last, f"C{a + 1}")
    curves = [curve(f1, f"C{j + 1}") for j in range(a)]
    curves.append(curve(c_last, f"C{a + 1}", genus_last if genus_last is not None else 0))
    X1 = blowup3fold_along_curves(P, curves, name="X1")
    X2 = _rename(P, "X2", {})
    m = a + 1
    # degree 2: delta2 from X1 is T composed with restriction
    cols = [T @ Mat.unit(3, b) for b in range(3)] + [T @ f1 for _ in range(a)] + [T @ c_last]
    d2_X1 = _cols([_pad(list(v.col(0)), 22) for v in cols])
    d1_X2 = _cols([Mat.unit(22, b) for b in range(3)])
    # degree 4: fibre classes f_ij meet D twice, e_j once
    d4_X1 = Mat.from_rows([[2, 2, 2] + [1] * m])
    d4_X2 = Mat.from_rows([[2, 2, 2]])
    one = Mat.identity(1)
    locus = DoubleLocus(D, (0, 1), {0: one, 2: d1_X2, 4: d4_X2}, {0: one, 2: d2_X1, 4: d4_X1})
    V = SncVariety(3, [X1, X2], [locus], name=f"hashimoto-sano(a={a})")
    sc = Scenario(V, scenario_id="hashimoto-sano", params={"a": a})
    r1 = 3 + m

    def x1(*v):
        return _pad(list(v), r1)

    A = a * a
    sc.bundles["L"] = [x1(1, 1, 1), Mat.vector([8 * A + 1, 1 + 4 * a, 1 - 4 * a])]
    sc.classes["F~1"] = [x1(1, 0, 0), Mat.vector([1, 0, 0])]
    sc.classes["F~2"] = [x1(4 * A - 2 * a, 1 - 2 * a, 2 * a), Mat.vector([0, 1, 0])]
    sc.classes["F~3"] = [x1(4 * A + 2 * a, -2 * a, 1 + 2 * a), Mat.vector([0, 0, 1])]
    for j in range(a):
        e = [0] * r1
        e[3 + j] = 1
        sc.classes[f"E~{j + 1}"] = [Mat.vector(e), Mat.vector([1, 0, 0])]
    sc.classes["Delta21"] = [x1(-1, 1, 0), Mat.vector([4 * A + 2 * a - 1, 1 + 2 * a, -2 * a])]
    sc.ample_restrictions = [Mat.unit(22, i) for i in range(3)]
    if genus_last is None:
        sc.params["b3_parameterized"] = True
        sc.notes.append(f"b3 excludes 2 g(C_{a + 1}); adjunction on D gives g(C_{a + 1}) = {last.genus}")
    else:
        sc.params["genus_last"] = genus_last
    return sc


def hashimoto_sano_basis(sc: Scenario) -> list[str]:
    a = sc.params["a"]
    return ["F~1", "F~2", "F~3"] + [f"E~{j + 1}" for j in range(a)]


def tau_normal_form(sc: Scenario, bundle: str = "L") -> dict:
    """tau(phi_L(x)) in H^4(X1) for the printed basis of H^2 of the fiber.

    tau(mu*(alpha) + sum a_i e_i, beta) = mu*(alpha + beta) + sum a_i e_i.
    """
    V = sc.variety
    X1, X2 = V.components
    L = sc.bundles[bundle]
    s1, s2 = X1.dim(4), X2.dim(4)
    tau = hstack([Mat.identity(s1), vstack([Mat.identity(s2), Mat.zeros(s1 - s2, s2)])])
    names = hashimoto_sano_basis(sc)
    cols = []
    for nm in names:
        c1, c2 = sc.classes[nm]
        img = vstack([X1.cup(L[0], 2) @ c1, X2.cup(L[1], 2) @ c2])
        cols.append(tau @ img)
    M = hstack(cols)
    F = M.block(0, 3, 0, 3)
    return {"basis": names, "matrix": M, "fiber_block": F, "fiber_det": det(F), "rank": rank(M)}


def clemens(l: int = 1, degrees: list[int] | None = None, a: int = 1) -> Scenario:
    """Blown-up quintic along l disjoint (-1,-1)-curves, glued to l quadric 3-folds."""
    if not isinstance(l, int) or l < 1:
        raise InvalidParams("clemens needs l >= 1")
    degrees = list(degrees) if degrees is not None else [1] * l
    if len(degrees) != l or any((not isinstance(d, int)) or d < 1 for d in degrees):
        raise InvalidParams("clemens needs l degrees d_i >= 1")
    X = quintic3()
    curves = [Curve((d,), 0, -2, f"C{i + 1}") for i, d in enumerate(degrees)]
    Xt = blowup3fold_along_curves(X, curves, name="X~")
    Qs = [quadric3(f"Q{i + 1}") for i in range(l)]
    loci = []
    one = Mat.identity(1)
    for i, d in enumerate(degrees):
        E = _rename(product_proj(1, 1, names=("sigma", "phi")), f"E{i + 1}", {})
        # from X~ : nu*H -> d phi, E_i -> -sigma - phi; nu*l -> 0, e_i -> -1
        h2 = [[0] * (1 + l) for _ in range(2)]
        h2[1][0] = d
        h2[0][1 + i] = -1
        h2[1][1 + i] = -1
        h4 = [[0] * (1 + l)]
        h4[0][1 + i] = -1
        from_Xt = {0: one, 2: Mat.from_rows(h2), 4: Mat.from_rows(h4)}
        from_Q = {0: one, 2: Mat.from_rows([[1], [1]]), 4: Mat.identity(1)}
        loci.append(DoubleLocus(E, (0, 1 + i), from_Q, from_Xt))
    V = SncVariety(3, [Xt] + Qs, loci, name=f"clemens(l={l})")
    sc = Scenario(V, scenario_id="clemens", params={"l": l, "d": degrees, "a": a})
    printed = [Mat.vector([a] + [-a * d for d in degrees])] + [Mat.vector([a * d]) for d in degrees]
    adjusted = [Mat.vector([0] + [-a * d for d in degrees])] + [Mat.vector([a * d]) for d in degrees]
    sc.bundles["L_printed"] = printed
    sc.bundles["L"] = adjusted
    sc.notes.append("a(nu*H - sum d_i E_i) with O(a d_i) on Q_i leaves residual -a d_i phi_i on each locus; "
                    "the glued bundle L uses -a sum d_i E_i instead")
    return sc


def quintic_tyurin() -> Scenario:
    """Blow-up of P^3 along a (4,5) complete intersection curve, glued to a quartic 3-fold along a quartic K3."""
    P3 = projective3()
    C = Curve((20,), 51, 180, "C")
    X1 = blowup3fold_along_curves(P3, [C], ample=(Mat.vector([6, -1]),), name="Bl_C P3")
    X2 = quartic3()
    D = quartic_k3()
    one = Mat.identity(1)
    d2_X1 = _cols([Mat.unit(22, 0), Mat.unit(22, 0).scale(5)])
    d2_X2 = Mat.unit(22, 0)
    d4_X1 = Mat.from_rows([[4, 1]])
    d4_X2 = Mat.from_rows([[1]])
    locus = DoubleLocus(D, (0, 1), {0: one, 2: d2_X2, 4: d4_X2}, {0: one, 2: d2_X1, 4: d4_X1})
    V = SncVariety(3, [X1, X2], [locus], name="quintic-tyurin")
    sc = Scenario(V, scenario_id="quintic-tyurin")
    sc.bundles["L"] = [Mat.vector([6, -1]), Mat.vector([1])]
    sc.ample_restrictions = [Mat.unit(22, 0)]
    return sc


def conic_product() -> Scenario:
    """P1 x P1 x (conic degenerating to two lines): two copies of P1^3 glued along P1 x P1.

    A projective sanity case with an ample glued bundle and a pure fiber.
    """
    X1 = _rename(product_proj(1, 1, 1), "X1", {})
    X2 = _rename(product_proj(1, 1, 1), "X2", {})
    D = product_proj(1, 1, names=("a", "b"))
    one = Mat.identity(1)
    # h1 -> a, h2 -> b, h3 -> 0; h1h2 -> ab, other quadratic monomials -> 0
    d2 = Mat.from_rows([[1, 0, 0], [0, 1, 0]])
    d4 = Mat.from_rows([[1, 0, 0]])
    locus = DoubleLocus(D, (0, 1), {0: one, 2: d2, 4: d4}, {0: one, 2: d2, 4: d4})
    V = SncVariety(3, [X1, X2], [locus], name="conic-product")
    sc = Scenario(V, scenario_id="conic-product")
    sc.bundles["L"] = [Mat.vector([1, 1, 1]), Mat.vector([1, 1, 1])]
    sc.ample_restrictions = [Mat.vector([1, 1])]
    return sc


def tyurin(X1: CohomologyPackage, X2: CohomologyPackage, D: CohomologyPackage,
           from_X1: dict[int, Mat], from_X2: dict[int, Mat], ample_restrictions=(), bundles=None) -> Scenario:
    """Two user-given 3-fold packages glued along one surface D."""
    if X1.n != 3 or X2.n != 3 or D.n != 2:
        raise InvalidParams("tyurin needs two 3-folds and a surface")
    locus = DoubleLocus(D, (0, 1), dict(from_X2), dict(from_X1))
    V = SncVariety(3, [X1, X2], [locus], name="tyurin")
    sc = Scenario(V, scenario_id="tyurin", ample_restrictions=list(ample_restrictions))
    sc.bundles.update(bundles or {})
    return sc


def synthetic_two_locus(locus_grams: list[Mat], maps_A: list[Mat], maps_B: list[Mat], name: str = "synthetic") -> SncVariety:
    """Two abstract 3-folds A, B meeting along abstract surfaces S_t.

    ``maps_A[t]`` and ``maps_B[t]`` give H^2 restrictions to S_t; H^0 maps are
    the identity and H^4 maps vanish, so only degree-3 data is meaningful.
    """
    rA, rB = maps_A[0].cols, maps_B[0].cols
    A = abstract_package("A", 3, {0: 1, 2: rA, 4: rA, 6: 1}, {0: Mat.identity(1), 2: Mat.identity(rA)})
    B = abstract_package("B", 3, {0: 1, 2: rB, 4: rB, 6: 1}, {0: Mat.identity(1), 2: Mat.identity(rB)})
    loci = []
    one = Mat.identity(1)
    for t, G in enumerate(locus_grams):
        S = abstract_package(f"S{t + 1}", 2, {0: 1, 2: G.rows, 4: 1}, {0: one, 2: G})
        loci.append(DoubleLocus(S, (0, 1),
                                {0: one, 2: maps_B[t], 4: Mat.zeros(1, rB)},
                                {0: one, 2: maps_A[t], 4: Mat.zeros(1, rA)}))
    return SncVariety(3, [A, B], loci, name=name)


def single_component(P: CohomologyPackage) -> SncVariety:
    return SncVariety(P.n, [P], [], name=P.name)


def _int_list(v):
    if v is None or isinstance(v, list):
        return v
    return [int(x) for x in str(v).split(",")]


SCENARIOS = {
    "hopf-f1": lambda: hopf_f1(),
    "hashimoto-sano": lambda a=1, genus_last=None: hashimoto_sano(
        int(a), None if genus_last is None else int(genus_last)),
    "clemens": lambda l=1, d=None, a=1: clemens(int(l), _int_list(d), int(a)),
    "quintic-tyurin": lambda: quintic_tyurin(),
    "conic-product": lambda: conic_product(),
}


def scenario(scenario_id: str, **params) -> Scenario:
    key = scenario_id.replace("_", "-").lower()
    if key not in SCENARIOS:
        raise InvalidParams(f"unknown scenario {scenario_id!r}; known: {', '.join(sorted(SCENARIOS))}")
    build = SCENARIOS[key]
    try:
        inspect.signature(build).bind(**params)
    except TypeError as exc:
        raise InvalidParams(f"bad parameters for {key}: {exc}") from exc
    try:
        return build(**params)
    except ValueError as exc:
        raise InvalidParams(f"bad parameter value for {key}: {exc}") from exc
