import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from snc_hodge.errors import MissingHodgeBasis, TypeViolation
from snc_hodge.hodge import (
    Block,
    HodgeGrading,
    check_conjugation_symmetry,
    dims_only,
    direct_sum,
    induced_hodge,
    is_k_opposed,
    pure_type,
    quotient_hodge,
    twist,
)
from snc_hodge.linalg import I, Mat, Subspace


def span(*cols):
    return Subspace.span(Mat.from_cols([list(c) for c in cols]))


def test_twist_examples():
    H = pure_type(2, 3)
    assert twist(H, 0) == H
    T = twist(pure_type(2, 3), 1)
    assert T.weight == 4 and T.block(2, 2).dim == 3 and T.shift == 1


def test_induced_hodge_zero_and_identity():
    H = pure_type(2, 2)
    K = induced_hodge(Mat.zeros(2, 2), H, H, "kernel")
    assert K.block(1, 1).dim == 2
    assert induced_hodge(Mat.zeros(2, 2), H, H, "image").total_dim == 0
    assert induced_hodge(Mat.identity(2), H, H, "kernel").total_dim == 0
    assert induced_hodge(Mat.identity(2), H, H, "cokernel").total_dim == 0


def test_induced_hodge_rejects_type_mixing():
    src = HodgeGrading(2, 2, (Block(2, 0, 1, span((1, 0))), Block(0, 2, 1, span((0, 1)))))
    swap = Mat.from_rows([[0, 1], [1, 0]])
    with pytest.raises(TypeViolation):
        induced_hodge(swap, src, src, "image")
    img = induced_hodge(Mat.diag([2, 0]), src, src, "image")
    assert img.block(2, 0).dim == 1 and img.block(0, 2).dim == 0


def test_induced_hodge_dims_only_needs_blockwise_data():
    src = dims_only(3, 2, {(2, 1): 1, (1, 2): 1})
    tgt = dims_only(3, 2, {(2, 1): 1, (1, 2): 1})
    with pytest.raises(MissingHodgeBasis):
        induced_hodge(Mat.identity(2), src, tgt, "kernel")
    K = induced_hodge(Mat.identity(2), src, tgt, "kernel",
                      block_maps={(2, 1): Mat.identity(1), (1, 2): Mat.identity(1)})
    assert K.total_dim == 0


def test_conjugation_symmetry_examples():
    assert check_conjugation_symmetry(pure_type(2, 2))
    good = HodgeGrading(2, 2, (Block(2, 0, 1, span((1, I))), Block(0, 2, 1, span((1, -I)))))
    assert check_conjugation_symmetry(good)
    bad = HodgeGrading(2, 2, (Block(2, 0, 1, span((1, I))), Block(0, 2, 1, span((1, 0)))))
    assert not check_conjugation_symmetry(bad)


def test_direct_sum_and_quotient():
    A = pure_type(2, 2)
    B = pure_type(2, 1)
    S = direct_sum([A, B], 2)
    assert S.ambient_dim == 3 and S.block(1, 1).dim == 3 and S.block(1, 1).explicit
    U = HodgeGrading(2, 3, (Block(1, 1, 1, span((1, 0, 0))),))
    Q = quotient_hodge(S, U)
    assert Q.block(1, 1).dim == 2


def test_grading_rejects_bad_blocks():
    with pytest.raises(ValueError):
        HodgeGrading(2, 1, (Block(2, 1, 1),))
    with pytest.raises(ValueError):
        Block(1, 1, 2, span((1, 0)))


@st.composite
def hodge_structures(draw):
    """Weight-k structures built from conjugate pairs of Gaussian vectors."""
    k = draw(st.integers(1, 3))
    pairs = draw(st.integers(0, 2))
    real = draw(st.integers(0, 2)) if k % 2 == 0 else 0
    n = 2 * pairs + real
    if n == 0:
        return HodgeGrading(k, 0)
    # a random real basis; pair j uses columns 2j, 2j+1 as v +- i w
    while True:
        cols = [[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(n)]
        if Mat.from_cols(cols, n).rows == n and Subspace.span(Mat.from_cols(cols, n)).dim == n:
            break
    blocks = {}
    for j in range(pairs):
        v, w = cols[2 * j], cols[2 * j + 1]
        p = draw(st.integers(k // 2 + 1 if k % 2 == 0 else (k + 1) // 2, k))
        plus = [a + I * b for a, b in zip(v, w)]
        minus = [a - I * b for a, b in zip(v, w)]
        blocks.setdefault((p, k - p), []).append(plus)
        blocks.setdefault((k - p, p), []).append(minus)
    for j in range(real):
        blocks.setdefault((k // 2, k // 2), []).append(cols[2 * pairs + j])
    out = tuple(Block(p, q, len(vs), Subspace(n, Mat.from_cols(vs, n))) for (p, q), vs in sorted(blocks.items()))
    return HodgeGrading(k, n, out)


@settings(max_examples=60)
@given(hodge_structures())
def test_conjugate_pair_structures_are_k_opposed(H):
    assert check_conjugation_symmetry(H)
    assert is_k_opposed(H)
    assert H.check() == []


def test_k_opposed_fails_without_conjugate_partner():
    H = HodgeGrading(1, 2, (Block(1, 0, 1, span((1, I))), Block(0, 1, 1, span((1, I + 1)))))
    assert not check_conjugation_symmetry(H)
    # F^1 = span{(1,i)} and conj F^1 = span{(1,-i)} still split C^2, so opposedness alone holds here
    assert is_k_opposed(H)
    collapsed = HodgeGrading(1, 2, (Block(1, 0, 1, span((1, 0))), Block(0, 1, 1, span((0, 1)))))
    assert not is_k_opposed(collapsed)
