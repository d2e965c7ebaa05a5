import pytest
from support import synthetic_inputs

from snc_hodge.errors import InvalidParams, MissingHodgeBasis, NotPure
from snc_hodge.geometries import (
    _symplectic,
    make_package,
    quintic_tyurin,
    scenario,
    single_component,
    tyurin,
)
from snc_hodge.hodge import dims_only, pure_type
from snc_hodge.linalg import Mat, Subspace, image
from snc_hodge.snc import rho
from snc_hodge.weight import (
    betti_fiber,
    betti_numbers,
    condition_star,
    cup_nondeg_on_image_rho,
    e1_page,
    euler_check,
    fiber_hodge_numbers,
    graded_pieces,
    lefschetz_compatible,
    lefschetz_pieces,
    n1_map,
)

ALL = ["hopf-f1", "hashimoto-sano", "clemens-1", "clemens-2", "quintic-tyurin", "conic-product"]


def test_e1_page_degree_zero(scenarios):
    V = scenarios["hopf-f1"].variety
    low, mid, high = e1_page(V, 0)
    assert (low.dim, mid.dim, high.dim) == (0, 2, 0)


def test_hopf_pieces(scenarios):
    V = scenarios["hopf-f1"].variety
    assert graded_pieces(V, 1).dims == (1, 0, 0)
    assert graded_pieces(V, 2).dims == (0, 0, 0)
    assert betti_numbers(V) == [1, 1, 0, 1, 1]


def test_hopf_n1_degree_one(scenarios):
    v = n1_map(scenarios["hopf-f1"].variety, 1)
    assert not v.is_iso and not v.pure_hs
    assert v.witness["reason"] == "high dim 0 ≠ low dim 1"
    with pytest.raises(NotPure):
        fiber_hodge_numbers(scenarios["hopf-f1"].variety, 1)
    assert fiber_hodge_numbers(scenarios["hopf-f1"].variety, 2) == {}


@pytest.mark.parametrize("key", ALL)
def test_b0_is_one_and_euler_identity(scenarios, key):
    V = scenarios[key].variety
    assert betti_fiber(V, 0) == 1
    e = euler_check(V)
    assert e["ok"], e
    assert fiber_hodge_numbers(V, 0) == {(0, 0): 1}


def test_euler_single_component():
    sc = quintic_tyurin()
    V = single_component(sc.variety.components[1])
    e = euler_check(V)
    assert e["ok"] and e["fiber_euler"] == V.components[0].euler()


def test_clemens_pieces():
    for l in (1, 2, 3):
        V = scenario("clemens", l=l).variety
        P = graded_pieces(V, 3)
        assert P.mid.dim == 204
        assert P.dims == (l - 1, 204, l - 1)
        assert betti_fiber(V, 2) == 0
    v = n1_map(scenario("clemens", l=1).variety, 3)
    assert v.is_iso and v.n1_matrix.shape == (0, 0)


def test_quintic_tyurin_hodge_numbers(scenarios):
    V = scenarios["quintic-tyurin"].variety
    assert fiber_hodge_numbers(V, 3) == {(3, 0): 1, (2, 1): 101, (1, 2): 101, (0, 3): 1}
    # h^{3,0} sits in the top weight piece, coming from the K3's (2,0) part
    P = graded_pieces(V, 3)
    assert P.high.h(3, 1) == 1 and P.mid.h(3, 0) == 0


def test_lefschetz_compatibility(scenarios):
    sc = scenarios["quintic-tyurin"]
    V = sc.variety
    eta = sc.ample_restrictions[0]
    W = image(rho(V, 2))
    assert lefschetz_compatible(V, eta, W)
    assert lefschetz_compatible(V, eta, Subspace.full(V.dim2(2)))
    for P in lefschetz_pieces(V, eta):
        assert lefschetz_compatible(V, eta, P)
    # a null vector of the K3 lattice mixing eta with a t-class is not compatible
    v = Mat.vector([1, 2] + [0] * 20)
    assert not lefschetz_compatible(V, eta, Subspace.span(v))
    with pytest.raises(InvalidParams):
        lefschetz_pieces(V, Mat.vector([0] * 22))


# ---------------------------------------------------------------------------
# cup non-degeneracy on Im rho versus N^[1]


@pytest.mark.parametrize("key", ALL)
def test_cup_nondeg_iff_n1_iso_scenarios(scenarios, key):
    V = scenarios[key].variety
    r = cup_nondeg_on_image_rho(V)
    assert r["nondegenerate"] == n1_map(V, V.n).is_iso


def test_cup_nondeg_iff_n1_iso_synthetic():
    seen = set()
    for name, V in synthetic_inputs():
        r = cup_nondeg_on_image_rho(V)
        assert r["nondegenerate"] == n1_map(V, 3).is_iso, name
        seen.add(r["nondegenerate"])
        if name == "isotropic":
            assert r["nondegenerate"] is False
        if name in ("zero", "full"):
            assert r["nondegenerate"] is True
    assert seen == {True, False}


# ---------------------------------------------------------------------------
# condition (*)


def test_condition_star_quintic_tyurin(scenarios):
    sc = scenarios["quintic-tyurin"]
    out = condition_star(sc.variety, "sufficient", sc.ample_restrictions)
    assert out["holds"] is True
    assert out["q_w3"]["method"] == "sufficient" and out["q_w3"]["passes"]
    assert out["q_w2"]["method"] == "exact"
    assert out["q_w2"]["corroboration"]["passes"]
    assert "conventions" in out


@pytest.mark.parametrize("l", [1, 2, 3])
def test_condition_star_clemens(l):
    sc = scenario("clemens", l=l)
    out = condition_star(sc.variety, "sufficient")
    assert out["holds"] is True
    assert out["q_w2"]["dim"] == l - 1


def _irregular_quartic():
    """A quartic-like 3-fold with h^{1,0} = 1, dims-only odd cohomology."""
    b3 = 60
    dims = (1, 2, 1, b3, 1, 2, 1)
    pairing = {0: Mat.identity(1), 1: _symplectic(1), 2: Mat.identity(1), 3: _symplectic(30)}
    cup2 = {0: (Mat.identity(1),), 1: (Mat.zeros(b3, 2),), 2: (Mat.from_rows([[4]]),),
            3: (Mat.zeros(2, b3),), 4: (Mat.identity(1),)}
    hodge = [pure_type(0, 1), dims_only(1, 2, {(1, 0): 1, (0, 1): 1}), pure_type(2, 1),
             dims_only(3, b3, {(2, 1): 30, (1, 2): 30}), pure_type(4, 1),
             dims_only(5, 2, {(3, 2): 1, (2, 3): 1}), pure_type(6, 1)]
    return make_package("irregular", 3, dims, pairing, cup2, tuple(hodge), (Mat.identity(1),))


def test_condition_star_inconclusive_without_bases():
    base = quintic_tyurin()
    V0 = base.variety
    d = V0.loci[0]
    sc = tyurin(V0.components[0], _irregular_quartic(), d.package,
                from_X1=d.delta2, from_X2=d.delta1, ample_restrictions=base.ample_restrictions)
    out = condition_star(sc.variety, "sufficient", sc.ample_restrictions)
    assert out["q_w3"]["verdict"] == "inconclusive"
    assert out["holds"] == "inconclusive"
    with pytest.raises(MissingHodgeBasis):
        condition_star(sc.variety, "exact")


def test_condition_star_rejects_surfaces(scenarios):
    with pytest.raises(InvalidParams):
        condition_star(scenarios["hopf-f1"].variety)
