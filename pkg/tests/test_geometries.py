import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from support import invertible, verdicts

from snc_hodge.errors import InvalidParams
from snc_hodge.geometries import (
    Curve,
    blowup3fold_along_curves,
    hirzebruch,
    k3_anticanonical_p1cubed,
    product_proj,
    projective3,
    quartic3,
    quintic3,
    scenario,
    tau_normal_form,
)
from snc_hodge.linalg import Form, Mat, inverse, signature
from snc_hodge.snc import (
    flip_locus,
    glue_line_bundle,
    rebase_component,
    rebase_locus,
    validate_package,
)
from snc_hodge.weight import (
    betti_numbers,
)


def _monomial(X, *classes):
    """Integral of a product of degree-2 classes on a 3-fold."""
    cls = X.unit
    for s, w in enumerate(classes):
        cls = X.cup(w, 2 * s) @ cls
    return X.integral(cls)


# ---------------------------------------------------------------------------
# building blocks


def test_packages_validate():
    for P in (product_proj(1, 1), product_proj(1, 1, 1), product_proj(2), hirzebruch(1), projective3(),
              quintic3(), quartic3(), k3_anticanonical_p1cubed()):
        assert validate_package(P) == [], P.name


def test_hirzebruch_intersection_form():
    F1 = hirzebruch(1)
    assert signature(Form(F1.pairing[2])) == (1, 1, 0)
    assert F1.euler() == 4


def test_k3_lattice_signature():
    D = k3_anticanonical_p1cubed()
    assert signature(Form(D.pairing[2])) == (3, 19, 0)
    assert D.euler() == 24
    assert D.h(2, 0) == 1 and D.h(1, 1) == 20


def test_quintic_numbers():
    X = quintic3()
    assert X.dims == (1, 0, 1, 204, 1, 0, 1)
    assert X.euler() == -200
    assert X.top_power(Mat.vector([1])) == 5


@pytest.mark.parametrize("d,g", [(1, 0), (2, 0), (3, 1), (20, 51)])
def test_blowup_of_p3_along_a_curve(d, g):
    # classical: H E^2 = -d, E^3 = -deg N = -(4d + 2g - 2), chi grows by chi(C)
    C = Curve((d,), g, 4 * d + 2 * g - 2)
    X = blowup3fold_along_curves(projective3(), [C])
    assert validate_package(X) == []
    H, E = Mat.vector([1, 0]), Mat.vector([0, 1])
    assert [_monomial(X, H, H, H), _monomial(X, H, H, E), _monomial(X, H, E, E), _monomial(X, E, E, E)] == \
        [1, 0, -d, -(4 * d + 2 * g - 2)]
    assert X.euler() == 4 + (2 - 2 * g)
    assert X.h(2, 1) == g


def test_blowup_rejects_bad_input():
    with pytest.raises(InvalidParams):
        blowup3fold_along_curves(hirzebruch(1), [])
    with pytest.raises(InvalidParams):
        blowup3fold_along_curves(projective3(), [Curve((1, 2), 0, 2)])


# ---------------------------------------------------------------------------
# scenarios


def test_scenario_parameters():
    with pytest.raises(InvalidParams):
        scenario("nonsense")
    with pytest.raises(InvalidParams):
        scenario("hopf-f1", a=2)
    with pytest.raises(InvalidParams):
        scenario("hashimoto-sano", a=0)
    with pytest.raises(InvalidParams):
        scenario("hashimoto-sano", a="x")
    with pytest.raises(InvalidParams):
        scenario("clemens", l=2, d=[1])
    assert scenario("clemens", l=2, d="1,2").params["d"] == [1, 2]
    assert scenario("Hopf_F1").scenario_id == "hopf-f1"


@pytest.mark.parametrize("a", [1, 2, 3])
def test_hashimoto_sano_tau(a):
    sc = scenario("hashimoto-sano", a=a)
    tau = tau_normal_form(sc)
    assert tau["fiber_det"] == 8 * (64 * a ** 4 - 2)
    assert tau["rank"] == 3 + a


def test_hashimoto_sano_genus_parameter():
    sc = scenario("hashimoto-sano", a=1)
    assert sc.params.get("b3_parameterized") and sc.notes
    b0 = betti_numbers(sc.variety)
    b2 = betti_numbers(scenario("hashimoto-sano", a=1, genus_last=2).variety)
    assert b2[3] - b0[3] == 4
    assert [x for i, x in enumerate(b0) if i != 3] == [x for i, x in enumerate(b2) if i != 3]


@pytest.mark.parametrize("l", [1, 2, 3])
def test_clemens_betti(l):
    V = scenario("clemens", l=l).variety
    b = betti_numbers(V)
    assert b[2] == 0 and b[4] == 0
    assert b[3] == 204 + 2 * (l - 1)


def test_clemens_printed_bundle_does_not_glue():
    sc = scenario("clemens", l=2)
    from snc_hodge.errors import GluingMismatch

    with pytest.raises(GluingMismatch):
        glue_line_bundle(sc.variety, sc.bundles["L_printed"])
    glue_line_bundle(sc.variety, sc.bundles["L"])


# ---------------------------------------------------------------------------
# invariance under change of basis and of locus orientation


SMALL = ["hopf-f1", "hashimoto-sano", "conic-product"]
_base = {}


def _reference(scenarios, key):
    if key not in _base:
        sc = scenarios[key]
        _base[key] = verdicts(sc.variety, sc.bundles["L"], sc.ample_restrictions)
    return _base[key]


@settings(max_examples=50)
@given(st.sampled_from(SMALL), st.integers(0, 2**32))
def test_verdicts_survive_component_basis_change(scenarios, key, seed):
    rng = random.Random(seed)
    sc = scenarios[key]
    V = sc.variety
    # Hashimoto-Sano's X1 has a K3-sized neighbourhood; rebase the small P1^3 side there
    idx = 1 if key == "hashimoto-sano" else rng.randrange(len(V.components))
    X = V.components[idx]
    P = {l: invertible(rng, X.dim(l)) for l in (2, 4) if X.dim(l)}
    W = rebase_component(V, idx, P)
    bundle = list(sc.bundles["L"])
    bundle[idx] = inverse(P[2]) @ bundle[idx]
    assert verdicts(W, bundle, sc.ample_restrictions) == _reference(scenarios, key)


@settings(max_examples=50)
@given(st.sampled_from(["hopf-f1", "conic-product"]), st.integers(0, 2**32))
def test_verdicts_survive_locus_basis_change(scenarios, key, seed):
    rng = random.Random(seed)
    sc = scenarios[key]
    V = sc.variety
    D = V.loci[0].package
    P = {l: invertible(rng, D.dim(l)) for l in (0, 2) if D.dim(l)}
    W = rebase_locus(V, 0, P)
    ample = [inverse(P[2]) @ a for a in sc.ample_restrictions]
    assert verdicts(W, sc.bundles["L"], ample) == _reference(scenarios, key)


@pytest.mark.parametrize("key", SMALL + ["clemens-2"])
def test_verdicts_survive_orientation_flip(scenarios, key):
    sc = scenarios[key]
    V = sc.variety
    W = V
    for i in range(len(V.loci)):
        W = flip_locus(W, i)
    base = verdicts(V, sc.bundles["L"], sc.ample_restrictions)
    assert verdicts(W, sc.bundles["L"], sc.ample_restrictions) == base
