"""Pure Hodge structures as (p,q)-block bookkeeping with Tate-twist labels.

A block is either explicit (a Gaussian-rational subspace of the ambient
space) or dims-only (just a count).  Transcendental pieces such as the
(2,0)-part of a K3 have no Gaussian-rational basis, so they travel as counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import MissingHodgeBasis, TypeViolation
from .linalg import Mat, Subspace, hstack, kernel, quotient_basis, rank


@dataclass(frozen=True)
class Block:
    p: int
    q: int
    dim: int
    space: Subspace | None = None

    @property
    def explicit(self) -> bool:
        return self.space is not None

    def __post_init__(self):
        if self.space is not None and self.space.dim != self.dim:
            raise ValueError(f"block ({self.p},{self.q}): basis has {self.space.dim} vectors, dim says {self.dim}")


@dataclass(frozen=True)
class HodgeGrading:
    weight: int
    ambient_dim: int
    blocks: tuple[Block, ...] = field(default_factory=tuple)
    shift: int = 0  # accumulated Tate shift; H(-1) has shift +1

    def __post_init__(self):
        seen = set()
        for b in self.blocks:
            if b.p + b.q != self.weight:
                raise ValueError(f"block ({b.p},{b.q}) does not have weight {self.weight}")
            if (b.p, b.q) in seen:
                raise ValueError(f"duplicate block ({b.p},{b.q})")
            seen.add((b.p, b.q))
            if b.space is not None and b.space.ambient_dim != self.ambient_dim:
                raise ValueError("block ambient dimension mismatch")

    def block(self, p: int, q: int) -> Block | None:
        for b in self.blocks:
            if b.p == p and b.q == q:
                return b
        return None

    def dim_of(self, p: int, q: int) -> int:
        b = self.block(p, q)
        return b.dim if b else 0

    @property
    def total_dim(self) -> int:
        return sum(b.dim for b in self.blocks)

    @property
    def is_explicit(self) -> bool:
        return all(b.explicit for b in self.blocks)

    def numbers(self) -> dict[tuple[int, int], int]:
        return {(b.p, b.q): b.dim for b in self.blocks if b.dim}

    def nonzero(self) -> "HodgeGrading":
        return HodgeGrading(self.weight, self.ambient_dim, tuple(b for b in self.blocks if b.dim), self.shift)

    def check(self) -> list[str]:
        """Invariant findings (empty when consistent)."""
        out = []
        expl = [b for b in self.blocks if b.explicit and b.dim]
        if expl:
            joint = hstack([b.space.basis for b in expl])
            if rank(joint) != joint.cols:
                out.append(f"weight {self.weight}: explicit blocks are not independent")
        if self.total_dim != self.ambient_dim:
            out.append(f"weight {self.weight}: block dims sum to {self.total_dim}, ambient is {self.ambient_dim}")
        return out


def pure_type(weight: int, ambient_dim: int, p: int | None = None) -> HodgeGrading:
    """Whole space in the single explicit block (p, weight-p); p defaults to weight/2."""
    if p is None:
        p = weight // 2
    if ambient_dim == 0:
        return HodgeGrading(weight, 0)
    return HodgeGrading(weight, ambient_dim, (Block(p, weight - p, ambient_dim, Subspace.full(ambient_dim)),))


def dims_only(weight: int, ambient_dim: int, numbers: dict[tuple[int, int], int]) -> HodgeGrading:
    blocks = tuple(Block(p, q, d) for (p, q), d in sorted(numbers.items(), reverse=True) if d)
    return HodgeGrading(weight, ambient_dim, blocks)


def direct_sum(gradings: list[HodgeGrading], weight: int) -> HodgeGrading:
    """Block-diagonal sum; explicit blocks stay explicit only if explicit in every summand."""
    total = sum(g.ambient_dim for g in gradings)
    types = sorted({(b.p, b.q) for g in gradings for b in g.blocks}, reverse=True)
    blocks = []
    for p, q in types:
        dim = sum(g.dim_of(p, q) for g in gradings)
        cols = []
        explicit = True
        offset = 0
        for g in gradings:
            b = g.block(p, q)
            if b and b.dim:
                if not b.explicit:
                    explicit = False
                else:
                    B = b.space.basis
                    pad = Mat.zeros(total, B.cols)
                    rows = pad.tolist()
                    for i in range(B.rows):
                        rows[offset + i] = list(B.row(i))
                    cols.append(Mat(total, B.cols, rows))
            offset += g.ambient_dim
        space = Subspace(total, hstack(cols, total), check=False) if explicit else None
        if explicit and space.dim != dim:
            space = None
        blocks.append(Block(p, q, dim, space))
    return HodgeGrading(weight, total, tuple(blocks))


def twist(H: HodgeGrading, m: int) -> HodgeGrading:
    """Tate twist (m) as in the weight spectral sequence: (p,q) -> (p+m, q+m).

    The twist by (-1) that labels E_1^{-1,k+1} is applied as twist(H, 1),
    following the convention that H(-1) raises the weight by two.
    """
    return HodgeGrading(
        H.weight + 2 * m,
        H.ambient_dim,
        tuple(Block(b.p + m, b.q + m, b.dim, b.space) for b in H.blocks),
        H.shift + m,
    )


def _block_rank(M: Mat, b: Block, target: HodgeGrading, block_maps) -> tuple[int, Mat | None]:
    """Rank of M on source block b and its image columns when explicit."""
    if b.dim == 0:
        return 0, Mat.zeros(M.rows, 0)
    if block_maps and (b.p, b.q) in block_maps:
        return rank(block_maps[(b.p, b.q)]), None
    tgt = target.block(b.p, b.q)
    if b.explicit:
        img = M @ b.space.basis
        if img.is_zero():
            return 0, img
        if tgt is None or tgt.dim == 0:
            raise TypeViolation(f"map sends block ({b.p},{b.q}) outside the matching target block")
        if tgt.explicit and not tgt.space.contains(img):
            raise TypeViolation(f"map mixes block ({b.p},{b.q}) with other types")
        return rank(img), img
    if tgt is None or tgt.dim == 0 or M.is_zero():
        return 0, Mat.zeros(M.rows, 0)
    raise MissingHodgeBasis(f"block ({b.p},{b.q}) is dims-only and no blockwise map was supplied")


def induced_hodge(M: Mat, source: HodgeGrading, target: HodgeGrading, part: str,
                  block_maps: dict | None = None) -> HodgeGrading:
    """Hodge grading of the kernel, image or cokernel of a type-preserving map.

    ``source`` must already carry any Tate twist the map requires.  Kernel
    blocks live in the source space; image and cokernel blocks in the target.
    """
    if part not in ("kernel", "image", "cokernel"):
        raise ValueError(f"unknown part {part!r}")
    if M.shape != (target.ambient_dim, source.ambient_dim):
        raise ValueError("map shape does not match the gradings")
    ranks: dict[tuple[int, int], int] = {}
    images: dict[tuple[int, int], Mat | None] = {}
    kernels: dict[tuple[int, int], Subspace | None] = {}
    for b in source.blocks:
        r, img = _block_rank(M, b, target, block_maps)
        ranks[(b.p, b.q)] = r
        images[(b.p, b.q)] = img
        if b.explicit and img is not None:
            K = kernel(img)
            kernels[(b.p, b.q)] = Subspace(source.ambient_dim, b.space.basis @ K.basis, check=False)
        else:
            kernels[(b.p, b.q)] = None

    if part == "kernel":
        blocks = tuple(Block(b.p, b.q, b.dim - ranks[(b.p, b.q)], kernels[(b.p, b.q)]) for b in source.blocks)
        return HodgeGrading(source.weight, source.ambient_dim, blocks, source.shift)

    out = []
    types = [(b.p, b.q) for b in target.blocks]
    types += [t for t in ranks if t not in types and ranks[t]]
    for p, q in types:
        r = ranks.get((p, q), 0)
        img = images.get((p, q))
        sb = source.block(p, q)
        if r == 0:
            img_space = Subspace(target.ambient_dim)
        elif img is not None and sb is not None and sb.explicit:
            img_space = Subspace.span(img)
        else:
            img_space = None
        if part == "image":
            out.append(Block(p, q, r, img_space))
        else:
            tb = target.block(p, q)
            tdim = tb.dim if tb else 0
            space = None
            if tb is not None and tb.explicit and img_space is not None:
                space = quotient_basis(tb.space, img_space)
            out.append(Block(p, q, tdim - r, space))
    return HodgeGrading(target.weight, target.ambient_dim, tuple(out), target.shift)


def quotient_hodge(V: HodgeGrading, U: HodgeGrading) -> HodgeGrading:
    """Blockwise V/U for U a sub-Hodge structure of V (same ambient)."""
    blocks = []
    for b in V.blocks:
        u = U.block(b.p, b.q)
        udim = u.dim if u else 0
        space = None
        if b.explicit and (u is None or u.explicit):
            space = quotient_basis(b.space, u.space if u else Subspace(V.ambient_dim))
        blocks.append(Block(b.p, b.q, b.dim - udim, space))
    return HodgeGrading(V.weight, V.ambient_dim, tuple(blocks), V.shift)


def check_conjugation_symmetry(H: HodgeGrading) -> bool:
    """True iff conj of every (p,q) block spans the (q,p) block."""
    for b in H.blocks:
        if not b.explicit:
            raise MissingHodgeBasis(f"block ({b.p},{b.q}) has no explicit basis")
    for b in H.blocks:
        other = H.block(b.q, b.p)
        odim = other.dim if other else 0
        if odim != b.dim:
            return False
        if b.dim and not other.space.same_span(b.space.conj()):
            return False
    return True


def hodge_filtration(H: HodgeGrading, p: int) -> Subspace:
    cols = [b.space.basis for b in H.blocks if b.p >= p and b.dim]
    if not cols:
        return Subspace(H.ambient_dim)
    return Subspace.span(hstack(cols))


def is_k_opposed(H: HodgeGrading) -> bool:
    """F^p and conj(F^{k-p+1}) are complementary for every p."""
    for b in H.blocks:
        if not b.explicit:
            raise MissingHodgeBasis(f"block ({b.p},{b.q}) has no explicit basis")
    k = H.weight
    n = H.ambient_dim
    ps = [b.p for b in H.blocks] or [0]
    for p in range(min(ps) - 1, max(ps) + 2):
        F = hodge_filtration(H, p)
        G = hodge_filtration(H, k - p + 1).conj()
        if F.intersect(G).dim != 0 or (F + G).dim != n:
            return False
    return True
