import random
from dataclasses import replace

import pytest

from snc_hodge.errors import DegreeOutOfRange, GluingMismatch, MissingCupData
from snc_hodge.geometries import hopf_bundle, scenario
from snc_hodge.linalg import Mat, rank
from snc_hodge.snc import (
    blocking,
    complex_findings,
    flip_locus,
    glue_line_bundle,
    gluing_residual,
    gysin,
    max_dim,
    rho,
    validate,
)


def test_hopf_validates_and_has_printed_rho(scenarios):
    V = scenarios["hopf-f1"].variety
    assert validate(V) == []
    assert rho(V, 2) == Mat.from_rows([[-1, 1, 0, -1], [0, 1, 1, -1]])
    r = rank(rho(V, 2))
    assert r == 2


def test_hopf_gysin_columns(scenarios):
    V = scenarios["hopf-f1"].variety
    G = gysin(V, 2)
    assert G == Mat.from_cols([[1, 0, -1, -1], [1, 1, -1, 0]])


def test_rho_degree_range(scenarios):
    V = scenarios["hopf-f1"].variety
    with pytest.raises(DegreeOutOfRange):
        rho(V, 3)


@pytest.mark.parametrize("key", ["hopf-f1", "hashimoto-sano", "clemens-2", "quintic-tyurin", "conic-product"])
def test_every_scenario_is_a_complex(scenarios, key):
    V = scenarios[key].variety
    assert validate(V) == []
    assert complex_findings(V) == []


def test_validate_reports_degenerate_pairing(scenarios):
    V = scenarios["hopf-f1"].variety
    T = V.components[0]
    bad = replace(T, pairing={**T.pairing, 2: Mat.zeros(2, 2)})
    W = type(V)(V.n, [bad, V.components[1]], V.loci, "bad")
    found = validate(W)
    assert any(f.startswith("degenerate-pairing at degree 2") for f in found)
    assert blocking(found)


def test_validate_reports_wrong_delta_shape(scenarios):
    V = scenarios["hopf-f1"].variety
    d = V.loci[0]
    bad = replace(d, delta1={**d.delta1, 2: Mat.zeros(2, 3)})
    W = type(V)(V.n, V.components, [bad], "bad")
    assert any(f.startswith("dimension-mismatch") for f in validate(W))


def test_dimension_cap(monkeypatch, scenarios):
    monkeypatch.setenv("SNC_HODGE_MAX_DIM", "100")
    assert max_dim() == 100
    found = validate(scenarios["clemens-1"].variety)
    assert any(f.startswith("dimension-cap") for f in found)
    assert blocking(found)


def test_hopf_gluing_law():
    V = scenario("hopf-f1").variety
    for a1 in range(-3, 4):
        for a2 in range(-3, 4):
            L = glue_line_bundle(V, hopf_bundle(a1, a2))
            assert L.classes[1] == Mat.vector([-a1, a2 - a1])


def test_hopf_gluing_mismatch_residual():
    V = scenario("hopf-f1").variety
    h = [Mat.vector([1, 0]), Mat.vector([1, 0])]
    with pytest.raises(GluingMismatch) as exc:
        glue_line_bundle(V, h)
    assert not exc.value.detail["residual"].is_zero()
    assert gluing_residual(V, h) == exc.value.detail["residual"]


def test_missing_cup_data_raises(scenarios):
    from snc_hodge.geometries import abstract_package

    P = abstract_package("A", 2, {0: 1, 2: 1, 4: 1}, {0: Mat.identity(1), 2: Mat.identity(1)})
    with pytest.raises(MissingCupData):
        P.cup(Mat.vector([1]), 0)


def _adjoint_cases(scenarios):
    cases = []
    for key in ("hopf-f1", "hashimoto-sano", "clemens-2", "quintic-tyurin", "conic-product"):
        V = scenarios[key].variety
        n = V.n
        for l in range(2, 2 * n + 1):
            if V.dim2(l - 2) and V.dim1(l) and 0 <= 2 * n - l <= 2 * (n - 1):
                cases.append((key, V, l))
    return cases


def test_gysin_adjointness_random_pairs(scenarios):
    """<a, rho(b)> on X^(2) equals <gamma(a), b> on X^(1), 10^4 random pairs."""
    rng = random.Random(20240611)
    cases = _adjoint_cases(scenarios)
    total = 10_000
    checked = 0
    for t in range(total):
        key, V, l = cases[t % len(cases)]
        m = 2 * V.n - l
        a = Mat.vector([rng.randint(-5, 5) for _ in range(V.dim2(l - 2))])
        b = Mat.vector([rng.randint(-5, 5) for _ in range(V.dim1(m))])
        lhs = (a.T @ V.pairing2(l - 2) @ (rho(V, m) @ b))[0, 0]
        rhs = ((gysin(V, l) @ a).T @ V.pairing1(l) @ b)[0, 0]
        assert lhs == rhs, (key, l)
        checked += 1
    assert checked == total


@pytest.mark.parametrize("key", ["hopf-f1", "hashimoto-sano", "clemens-2"])
def test_flip_negates_rho_and_gysin(scenarios, key):
    V = scenarios[key].variety
    W = flip_locus(V, 0)
    if len(V.loci) == 1:
        assert rho(W, 2) == -rho(V, 2)
        assert gysin(W, 2) == -gysin(V, 2)
