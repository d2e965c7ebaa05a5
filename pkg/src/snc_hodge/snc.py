"""SNC varieties without triple intersection: data model, restriction maps,
Gysin maps from adjointness, and gluing of line-bundle classes."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

from .errors import (
    DegeneratePairing,
    DegreeOutOfRange,
    GluingMismatch,
    MissingCupData,
    NotInSpan,
)
from .hodge import Block, HodgeGrading, direct_sum
from .linalg import Mat, Subspace, block_diag, hstack, inverse, rank, solve, vstack

DEFAULT_MAX_DIM = 512


def max_dim() -> int:
    raw = os.environ.get("SNC_HODGE_MAX_DIM", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_DIM
    except ValueError:
        return DEFAULT_MAX_DIM


@dataclass(frozen=True, eq=False)
class CohomologyPackage:
    """Cohomology of a smooth projective piece.

    ``pairing[l]`` is the Gram of the Poincare pairing H^l x H^{2n-l}.
    ``cup2[l][b]`` is the matrix of cup product with the b-th degree-2 basis
    class, H^l -> H^{l+2}.  ``ample`` lists generators of an open cone of
    ample degree-2 classes (positive combinations are ample).
    """

    name: str
    n: int
    dims: tuple[int, ...]
    hodge: tuple[HodgeGrading, ...]
    pairing: dict[int, Mat]
    cup2: dict[int, tuple[Mat, ...]] | None = None
    ample: tuple[Mat, ...] = ()
    labels: dict[int, tuple[str, ...]] = field(default_factory=dict)
    unit: Mat | None = None

    def dim(self, l: int) -> int:
        return self.dims[l] if 0 <= l <= 2 * self.n else 0

    def euler(self) -> int:
        return sum((-1) ** l * d for l, d in enumerate(self.dims))

    def h(self, p: int, q: int) -> int:
        l = p + q
        if not 0 <= l <= 2 * self.n:
            return 0
        return self.hodge[l].dim_of(p, q)

    def label(self, l: int, i: int) -> str:
        labs = self.labels.get(l)
        return labs[i] if labs and i < len(labs) else f"b{l}_{i}"

    def cup(self, v: Mat, l: int) -> Mat:
        """Matrix of cup product with the degree-2 class v on H^l."""
        if l + 2 > 2 * self.n or self.dim(l) == 0 or self.dim(l + 2) == 0:
            return Mat.zeros(self.dim(l + 2), self.dim(l))
        if self.cup2 is None or l not in self.cup2:
            raise MissingCupData(f"{self.name}: no cup table on H^{l}")
        tables = self.cup2[l]
        out = Mat.zeros(self.dim(l + 2), self.dim(l))
        for b, c in enumerate(v.col(0)):
            if c:
                out = out + tables[b].scale(c)
        return out

    def power(self, v: Mat, l: int, i: int) -> Mat:
        """Matrix of cup with v^i from H^l to H^{l+2i}."""
        M = Mat.identity(self.dim(l))
        for s in range(i):
            M = self.cup(v, l + 2 * s) @ M
        return M

    def integral(self, x: Mat) -> object:
        """Integral of a top-degree class."""
        if self.unit is None:
            raise MissingCupData(f"{self.name}: no unit class recorded")
        return (self.unit.T @ self.pairing[0] @ x)[0, 0]

    def top_power(self, v: Mat):
        top = self.power(v, 0, self.n) @ self.unit
        return self.integral(top)

    def is_ample(self, v: Mat) -> bool:
        """v is a positive combination of the flagged generators."""
        if not self.ample:
            return False
        G = hstack(list(self.ample))
        if rank(G) == G.cols:
            try:
                c = solve(G, v)
            except NotInSpan:
                return False
            return all(x > 0 for x in c.col(0))
        for a in self.ample:
            try:
                c = solve(a, v)[0, 0]
            except NotInSpan:
                continue
            if c > 0:
                return True
        return False

    def h01(self) -> int:
        return self.h(0, 1)


@dataclass(frozen=True, eq=False)
class DoubleLocus:
    """X_ij = X_i cap X_j with i < j.

    delta1[l]: H^l(X_j) -> H^l(X_ij) and delta2[l]: H^l(X_i) -> H^l(X_ij).
    ``orientation`` = -1 swaps the roles (every verdict is unchanged).
    """

    package: CohomologyPackage
    pair: tuple[int, int]
    delta1: dict[int, Mat]
    delta2: dict[int, Mat]
    orientation: int = 1


class SncVariety:
    """Components X^(1) and double loci X^(2); no triple points by construction."""

    def __init__(self, n: int, components, loci, name: str = "snc"):
        self.n = n
        self.components: tuple[CohomologyPackage, ...] = tuple(components)
        self.loci: tuple[DoubleLocus, ...] = tuple(loci)
        self.name = name
        self._cache: dict = {}

    # direct sums ------------------------------------------------------
    def dim1(self, l: int) -> int:
        return sum(c.dim(l) for c in self.components)

    def dim2(self, l: int) -> int:
        return sum(d.package.dim(l) for d in self.loci)

    def offsets1(self, l: int) -> list[int]:
        out, s = [], 0
        for c in self.components:
            out.append(s)
            s += c.dim(l)
        return out

    def offsets2(self, l: int) -> list[int]:
        out, s = [], 0
        for d in self.loci:
            out.append(s)
            s += d.package.dim(l)
        return out

    def pairing1(self, l: int) -> Mat:
        """Gram of H^l(X^(1)) x H^{2n-l}(X^(1))."""
        return _block_pairing([c for c in self.components], l, 2 * self.n - l)

    def pairing2(self, l: int) -> Mat:
        """Gram of H^l(X^(2)) x H^{2n-2-l}(X^(2))."""
        return _block_pairing([d.package for d in self.loci], l, 2 * (self.n - 1) - l)

    def hodge1(self, l: int) -> HodgeGrading:
        return direct_sum([_grading(c, l) for c in self.components], l)

    def hodge2(self, l: int) -> HodgeGrading:
        return direct_sum([_grading(d.package, l) for d in self.loci], l)

    def h0_loci(self) -> int:
        return self.dim2(0)

    def split1(self, v: Mat, l: int) -> list[Mat]:
        offs = self.offsets1(l)
        return [v.block(o, o + c.dim(l), 0, v.cols) for o, c in zip(offs, self.components)]

    def split2(self, v: Mat, l: int) -> list[Mat]:
        offs = self.offsets2(l)
        return [v.block(o, o + d.package.dim(l), 0, v.cols) for o, d in zip(offs, self.loci)]

    def cup1(self, classes: list[Mat], l: int) -> Mat:
        """Cup with a per-component degree-2 class on H^l(X^(1))."""
        return block_diag([c.cup(v, l) for c, v in zip(self.components, classes)])

    def cup2(self, classes: list[Mat], l: int) -> Mat:
        return block_diag([d.package.cup(v, l) for d, v in zip(self.loci, classes)])

    def cached(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]


def _grading(pkg: CohomologyPackage, l: int) -> HodgeGrading:
    if 0 <= l <= 2 * pkg.n:
        return pkg.hodge[l]
    return HodgeGrading(l, 0)


def _block_pairing(pkgs: list[CohomologyPackage], a: int, b: int) -> Mat:
    blocks = []
    for p in pkgs:
        if p.dim(a) == 0 or p.dim(b) == 0:
            blocks.append(Mat.zeros(p.dim(a), p.dim(b)))
        else:
            blocks.append(p.pairing[a])
    return block_diag(blocks)


# ---------------------------------------------------------------------------
# validation


def validate_package(pkg: CohomologyPackage, expected_n: int | None = None) -> list[str]:
    out = []
    tag = pkg.name
    n = pkg.n
    cap = max_dim()
    if expected_n is not None and n != expected_n:
        out.append(f"dimension-mismatch: {tag} has dimension {n}, expected {expected_n}")
    if len(pkg.dims) != 2 * n + 1:
        out.append(f"dimension-mismatch: {tag} lists {len(pkg.dims)} degrees, expected {2 * n + 1}")
        return out
    for l, d in enumerate(pkg.dims):
        if d > cap:
            out.append(f"dimension-cap: {tag} H^{l} has dim {d} > {cap}")
    if any(d > cap for d in pkg.dims):
        return out
    for l in range(2 * n + 1):
        dl, dm = pkg.dim(l), pkg.dim(2 * n - l)
        if dl != dm:
            out.append(f"dimension-mismatch: {tag} H^{l} and H^{2 * n - l} differ ({dl} vs {dm})")
            continue
        if dl == 0:
            continue
        G = pkg.pairing.get(l)
        if G is None:
            out.append(f"missing-pairing: {tag} degree {l}")
            continue
        if G.shape != (dl, dm):
            out.append(f"dimension-mismatch: {tag} pairing at degree {l} has shape {G.shape}")
            continue
        if rank(G) != dl:
            out.append(f"degenerate-pairing at degree {l} ({tag})")
        other = pkg.pairing.get(2 * n - l)
        if other is not None and other.shape == (dm, dl):
            sign = (-1) ** (l * (2 * n - l))
            if other != G.T.scale(sign):
                out.append(f"graded-commutativity: {tag} pairings at degrees {l} and {2 * n - l} disagree")
    if len(pkg.hodge) != 2 * n + 1:
        out.append(f"dimension-mismatch: {tag} has {len(pkg.hodge)} Hodge gradings")
    else:
        for l, H in enumerate(pkg.hodge):
            if H.weight != l or H.ambient_dim != pkg.dim(l):
                out.append(f"hodge: {tag} grading at degree {l} has weight {H.weight}, ambient {H.ambient_dim}")
                continue
            out += [f"hodge: {tag} {msg}" for msg in H.check()]
    if pkg.cup2 is not None:
        for l, tabs in pkg.cup2.items():
            if len(tabs) != pkg.dim(2):
                out.append(f"dimension-mismatch: {tag} cup table on H^{l} has {len(tabs)} entries")
                continue
            for t in tabs:
                if t.shape != (pkg.dim(l + 2), pkg.dim(l)):
                    out.append(f"dimension-mismatch: {tag} cup table on H^{l} has shape {t.shape}")
                    break
    return out


def _preserves_blocks(M: Mat, src: HodgeGrading, tgt: HodgeGrading) -> bool:
    for b in src.blocks:
        if not b.explicit or b.dim == 0:
            continue
        img = M @ b.space.basis
        if img.is_zero():
            continue
        t = tgt.block(b.p, b.q)
        if t is None or t.dim == 0:
            return False
        if t.explicit and not t.space.contains(img):
            return False
    return True


def validate(V: SncVariety) -> list[str]:
    """Checkable invariants as a list of findings (empty iff all hold)."""
    out = []
    for c in V.components:
        out += validate_package(c, V.n)
    for t, d in enumerate(V.loci):
        out += validate_package(d.package, V.n - 1)
        i, j = d.pair
        if not (0 <= i < j < len(V.components)):
            out.append(f"bad-incidence: locus {t} pairs components {d.pair}")
            continue
        for l in range(2 * (V.n - 1) + 1):
            for name, delta, comp in (("delta1", d.delta1, V.components[j]), ("delta2", d.delta2, V.components[i])):
                shape = (d.package.dim(l), comp.dim(l))
                M = delta.get(l)
                if M is None:
                    if shape[0] and shape[1]:
                        out.append(f"dimension-mismatch: locus {t} {name} missing at degree {l}")
                    continue
                if M.shape != shape:
                    out.append(f"dimension-mismatch: locus {t} {name} at degree {l} has shape {M.shape}, expected {shape}")
                    continue
                if len(d.package.hodge) > l and len(comp.hodge) > l:
                    if not _preserves_blocks(M, comp.hodge[l], d.package.hodge[l]):
                        out.append(f"hodge-block-violation: locus {t} {name} at degree {l}")
    return out


BLOCKING = ("dimension-mismatch", "degenerate-pairing", "missing-pairing", "bad-incidence", "dimension-cap")


def blocking(findings: list[str]) -> list[str]:
    return [f for f in findings if f.startswith(BLOCKING)]


def complex_findings(V: SncVariety) -> list[str]:
    """Im gamma_k inside Ker rho_k for every k (holds on geometric input)."""
    out = []
    for k in range(0, 2 * V.n + 1):
        if k > 2 * (V.n - 1):
            continue
        comp = rho(V, k) @ gysin(V, k)
        if not comp.is_zero():
            out.append(f"complex-violation: rho_{k} o gamma_{k} != 0")
    return out


# ---------------------------------------------------------------------------
# restriction and Gysin maps


def _delta(d: DoubleLocus, which: int, l: int, comp: CohomologyPackage) -> Mat:
    M = (d.delta1 if which == 1 else d.delta2).get(l)
    if M is None:
        return Mat.zeros(d.package.dim(l), comp.dim(l))
    return M


def rho(V: SncVariety, l: int) -> Mat:
    """rho_l = delta1^* - delta2^* : H^l(X^(1)) -> H^l(X^(2))."""
    if not 0 <= l <= 2 * (V.n - 1):
        raise DegreeOutOfRange(f"rho_{l} needs 0 <= l <= {2 * (V.n - 1)}")

    def build():
        rows = []
        for d in V.loci:
            i, j = d.pair
            blocks = []
            for c, comp in enumerate(V.components):
                if c == j:
                    blocks.append(_delta(d, 1, l, comp).scale(d.orientation))
                elif c == i:
                    blocks.append(_delta(d, 2, l, comp).scale(-d.orientation))
                else:
                    blocks.append(Mat.zeros(d.package.dim(l), comp.dim(l)))
            rows.append(hstack(blocks, d.package.dim(l)))
        return vstack(rows, V.dim1(l))

    return V.cached(("rho", l), build)


def rho_or_zero(V: SncVariety, l: int) -> Mat:
    if 0 <= l <= 2 * (V.n - 1):
        return rho(V, l)
    return Mat.zeros(V.dim2(l), V.dim1(l))


def gysin(V: SncVariety, l: int) -> Mat:
    """gamma_l : H^{l-2}(X^(2))(-1) -> H^l(X^(1)), the adjoint of rho_{2n-l}.

    Solves P1^T gamma = rho^T P2^T so that
    <a, rho_{2n-l} b>_{X^(2)} = <gamma_l a, b>_{X^(1)}; no 2*pi*i factors.
    """

    def build():
        src = V.dim2(l - 2)
        tgt = V.dim1(l)
        if src == 0 or tgt == 0:
            return Mat.zeros(tgt, src)
        m = 2 * V.n - l
        R = rho(V, m)
        P1 = V.pairing1(l)
        P2 = V.pairing2(l - 2)
        try:
            return solve(P1.T, R.T @ P2.T)
        except NotInSpan as exc:
            raise DegeneratePairing(f"Poincare pairing on H^{l}(X^(1)) is degenerate") from exc

    return V.cached(("gysin", l), build)


# ---------------------------------------------------------------------------
# line bundles


@dataclass(frozen=True, eq=False)
class GluedLineBundle:
    classes: tuple[Mat, ...]
    on_loci: tuple[Mat, ...]

    def stacked(self) -> Mat:
        return vstack(list(self.classes), 1)

    def loci_stacked(self) -> Mat:
        return vstack(list(self.on_loci), 1)

    def scaled(self, m) -> "GluedLineBundle":
        return GluedLineBundle(tuple(c.scale(m) for c in self.classes), tuple(c.scale(m) for c in self.on_loci))


def gluing_residual(V: SncVariety, classes: list[Mat]) -> Mat:
    return rho(V, 2) @ vstack(list(classes), 1)


def glue_line_bundle(V: SncVariety, classes: list[Mat]) -> GluedLineBundle:
    if len(classes) != len(V.components):
        raise ValueError("one class per component is required")
    res = gluing_residual(V, classes)
    if not res.is_zero():
        raise GluingMismatch("classes do not agree on the double loci", residual=res)
    on = []
    for d in V.loci:
        j = d.pair[1]
        on.append(_delta(d, 1, 2, V.components[j]) @ classes[j])
    return GluedLineBundle(tuple(classes), tuple(on))


# ---------------------------------------------------------------------------
# change of basis (used for invariance checks)


def rebase_package(pkg: CohomologyPackage, P: dict[int, Mat]) -> CohomologyPackage:
    """New basis of H^l given by the columns of P[l] (old coordinates)."""
    n = pkg.n
    Pl = {l: P.get(l, Mat.identity(pkg.dim(l))) for l in range(2 * n + 1)}
    Pinv = {l: inverse(M) if M.rows else M for l, M in Pl.items()}
    pairing = {l: Pl[l].T @ G @ Pl[2 * n - l] for l, G in pkg.pairing.items()}
    cup2 = None
    if pkg.cup2 is not None:
        cup2 = {}
        P2 = Pl[2]
        for l, tabs in pkg.cup2.items():
            new = []
            for bp in range(pkg.dim(2)):
                acc = Mat.zeros(pkg.dim(l + 2), pkg.dim(l))
                for b in range(pkg.dim(2)):
                    c = P2[b, bp]
                    if c:
                        acc = acc + tabs[b].scale(c)
                new.append(Pinv[l + 2] @ acc @ Pl[l])
            cup2[l] = tuple(new)
    hodge = []
    for l, H in enumerate(pkg.hodge):
        blocks = tuple(
            Block(b.p, b.q, b.dim, Subspace(H.ambient_dim, Pinv[l] @ b.space.basis, check=False) if b.explicit else None)
            for b in H.blocks
        )
        hodge.append(HodgeGrading(H.weight, H.ambient_dim, blocks, H.shift))
    return replace(
        pkg,
        pairing=pairing,
        cup2=cup2,
        hodge=tuple(hodge),
        ample=tuple(Pinv[2] @ a for a in pkg.ample),
        unit=Pinv[0] @ pkg.unit if pkg.unit is not None else None,
        labels={},
    )


def rebase_component(V: SncVariety, idx: int, P: dict[int, Mat]) -> SncVariety:
    comps = list(V.components)
    comps[idx] = rebase_package(comps[idx], P)
    loci = []
    for d in V.loci:
        d1, d2 = dict(d.delta1), dict(d.delta2)
        for l, M in P.items():
            if d.pair[1] == idx and l in d1:
                d1[l] = d1[l] @ M
            if d.pair[0] == idx and l in d2:
                d2[l] = d2[l] @ M
        loci.append(replace(d, delta1=d1, delta2=d2))
    return SncVariety(V.n, comps, loci, V.name)


def rebase_locus(V: SncVariety, idx: int, P: dict[int, Mat]) -> SncVariety:
    loci = list(V.loci)
    d = loci[idx]
    inv = {l: inverse(M) for l, M in P.items()}
    d1 = {l: (inv[l] @ M if l in inv else M) for l, M in d.delta1.items()}
    d2 = {l: (inv[l] @ M if l in inv else M) for l, M in d.delta2.items()}
    loci[idx] = replace(d, package=rebase_package(d.package, P), delta1=d1, delta2=d2)
    return SncVariety(V.n, V.components, loci, V.name)


def flip_locus(V: SncVariety, idx: int) -> SncVariety:
    loci = list(V.loci)
    loci[idx] = replace(loci[idx], orientation=-loci[idx].orientation)
    return SncVariety(V.n, V.components, loci, V.name)


# ---------------------------------------------------------------------------
# scenarios


@dataclass(eq=False)
class Scenario:
    """A variety plus named classes that the analyses refer to."""

    variety: SncVariety
    bundles: dict[str, list[Mat]] = field(default_factory=dict)
    classes: dict[str, list[Mat]] = field(default_factory=dict)
    ample_restrictions: list[Mat] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    scenario_id: str = "custom"
