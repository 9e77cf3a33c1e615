import json
from math import comb

import numpy as np
import pytest

from godbersen_lab.constructions import build_diag_C, build_T
from godbersen_lab.engine import mixed_volume_profile
from godbersen_lab.kernel import (
    coordinate_subspace,
    scale,
    subspace_from_span,
    translate,
    volume,
)
from godbersen_lab.verifiers import (
    InequalityReport,
    default_lambda_grid,
    godbersen_reports,
    is_proven,
    report_to_dict,
    verify_alexandrov,
    verify_average_corollary,
    verify_lemma_C,
    verify_markov_corollary,
    verify_milman_pajor,
    verify_remark_EL,
    verify_rs_difference,
    verify_secproj,
    verify_strange,
    verify_theorem_sum,
    verify_unbalanced,
)
from godbersen_lab.zoo import BodySpec, generate, recenter


def simplex(d):
    return generate(BodySpec("SIMPLEX", d))


def cube(d, centered=False):
    K = generate(BodySpec("CUBE", d))
    return translate(scale(K, 2.0), [-1.0] * d) if centered else K


def seeded(d, seed):
    return recenter(generate(BodySpec("RANDOM_SPHERE", d, m=d + 7,
                                      seed=seed)))


def test_report_margin_tolerance_semantics():
    r = InequalityReport("THM1", ("x",), {}, 1.0, 1.0 - 5e-8)
    assert r.margin == pytest.approx(-5e-8)
    assert r.passed  # within 1e-7 * max(1, rhs)
    r2 = InequalityReport("THM1", ("x",), {}, 1.0, 1.0 - 5e-7)
    assert not r2.passed
    r3 = InequalityReport("THM1", ("x",), {}, 10.0, 20.0)
    assert r3.tol == pytest.approx(2e-6)


def test_theorem_sum_cube_strict_and_endpoint_equality():
    K = cube(3)
    reports = verify_theorem_sum(K, default_lambda_grid(11))
    for r in reports:
        assert r.passed
        lam = r.parameters["lambda"]
        if lam in (0.0, 1.0):
            assert r.margin == pytest.approx(0.0, abs=1e-12)
        else:
            assert r.margin > 0.0


def test_theorem_sum_simplex_equality_at_half():
    reports = verify_theorem_sum(simplex(2), [0.5])
    assert reports[0].lhs == pytest.approx(0.5, rel=1e-9)
    assert reports[0].margin == pytest.approx(0.0, abs=1e-9)


def test_theorem_sum_reformulated_display_equivalent():
    # the middle-term reformulation agrees algebraically with the main
    # form; the main form stays canonical, the residual is recorded
    K = seeded(3, 77)
    for r in verify_theorem_sum(K, default_lambda_grid(9)):
        assert r.parameters["reformulation_residual"] <= 1e-12
        lam = r.parameters["lambda"]
        if 0.0 < lam < 1.0:
            assert (r.parameters["reformulated_sum"] <= 1e-9) == r.passed


def test_lemma_C_bound_and_simplex_saturation():
    K = simplex(3)
    for r in verify_lemma_C(K, default_lambda_grid(11)):
        assert r.passed
        assert abs(r.margin) <= 1e-9  # simplices saturate for every lambda
        assert r.parameters["identity_rel_err"] <= 1e-9


def test_average_corollary_cube3_value():
    r = verify_average_corollary(cube(3))
    assert r.lhs == pytest.approx(2 / 3, rel=1e-9)
    assert r.rhs == pytest.approx(1.0, rel=1e-12)
    assert r.parameters["form_residual"] <= 1e-12


def test_average_corollary_simplex_equality():
    r = verify_average_corollary(simplex(4))
    assert r.margin == pytest.approx(0.0, abs=1e-9)


def test_average_forms_agree_on_random_bodies():
    for seed in (101, 102):
        r = verify_average_corollary(seeded(3, seed))
        assert r.parameters["form_residual"] <= 1e-12


def test_markov_corollary_median_and_simplex():
    K = seeded(4, 9)
    prof = mixed_volume_profile(K)
    r = verify_markov_corollary(K, 2, prof)  # k = ceil((n-1)/2): median <= 2
    assert r.passed
    S = simplex(4)
    for k in (1, 2, 3):
        assert verify_markov_corollary(S, k).passed
    # k = n-1 threshold (n-1)/1 dominates every computed ratio
    assert verify_markov_corollary(K, 3, prof).passed


def test_rs_difference_simplex_equality_and_cube():
    r = verify_rs_difference(simplex(2))
    assert r.lhs == pytest.approx(3.0, rel=1e-9)      # hexagon volume
    assert r.rhs == pytest.approx(3.0, rel=1e-12)     # C(4,2)/2
    assert r.parameters["paths_rel_err"] <= 1e-6
    rc = verify_rs_difference(cube(3))
    assert rc.lhs == pytest.approx(8.0, rel=1e-9)     # 2^n vol
    assert rc.rhs == pytest.approx(20.0, rel=1e-12)


def test_rs_difference_two_paths_on_seeded_bodies():
    for d, seed in ((2, 201), (3, 202)):
        r = verify_rs_difference(seeded(d, seed))
        assert r.parameters["paths_rel_err"] <= 1e-6


def test_secproj_cube_coordinate_subspace():
    K = cube(4, centered=True)
    r = verify_secproj(K, coordinate_subspace(4, [0, 1]))
    # section = [-1,1]^2 (area 4), projection = [-1,1]^2 (area 4)
    assert r.parameters["section_vol"] == pytest.approx(4.0, rel=1e-9)
    assert r.parameters["projection_vol"] == pytest.approx(4.0, rel=1e-9)
    assert r.lhs == pytest.approx(16.0, rel=1e-9)
    assert r.rhs == pytest.approx(comb(4, 2) * 16.0, rel=1e-9)
    assert r.passed


def test_secproj_T_body_chain():
    # the lifted-body instance ends in the bound
    # vol(C-type) <= (1/(n+1)) vol(K1) vol(K2) / vol(th K1 ∩ (1-th) K2)
    K1, K2 = seeded(2, 301), seeded(2, 302)
    T = build_T(K1, K2)
    n = 2
    theta = 0.5
    point = np.zeros(2 * n + 1)
    point[0] = theta
    E = coordinate_subspace(2 * n + 1, range(1, n + 1), point)
    r = verify_secproj(T.body, E)
    assert r.passed
    chain_rhs = (volume(K1) * volume(K2) / (n + 1)
                 / r.parameters["section_vol"])
    assert r.parameters["projection_vol"] <= chain_rhs * (1 + 1e-9)


def test_secproj_diag_construction_application():
    K, L = seeded(2, 303), seeded(2, 304)
    C = build_diag_C(K, L)
    E = subspace_from_span(np.zeros(4), np.hstack([np.eye(2), np.eye(2)]))
    r = verify_secproj(C, E)
    assert r.passed
    assert r.rhs == pytest.approx(comb(4, 2) * volume(C), rel=1e-12)


def test_unbalanced_endpoints_exact_and_half_reduces_to_rs():
    for d, seed in ((2, 401), (3, 402)):
        K = seeded(d, seed)
        prof = mixed_volume_profile(K)
        reports = verify_unbalanced(K, [0.0, 0.5, 1.0], prof)
        by_lam = {r.parameters["lambda"]: r for r in reports}
        assert by_lam[0.0].margin == 0.0
        assert by_lam[1.0].margin == 0.0
        rs = verify_rs_difference(K, prof)
        # margin at 1/2 is the RS margin rescaled by 2^{-n} / vol(K)
        expected = rs.margin * 0.5 ** d / prof.vol
        assert by_lam[0.5].margin == pytest.approx(expected, rel=1e-6)


def test_unbalanced_simplex_equality_everywhere():
    for r in verify_unbalanced(simplex(4), default_lambda_grid(11)):
        assert abs(r.margin) <= 1e-9


def test_strange_symmetric_cube_value():
    K = cube(2, centered=True)
    r = verify_strange(K, K)
    # conv(K u -K) = K, (K*+K*)* = K/2: lhs = vol(K)^2 / 2^n
    assert r.lhs == pytest.approx(volume(K) ** 2 / 4, rel=1e-9)
    assert r.rhs == pytest.approx(volume(K) ** 2, rel=1e-12)
    assert r.passed


def test_strange_recenters_bodies_without_interior_origin():
    K = cube(2)  # origin on the boundary
    r = verify_strange(K, K)
    assert r.passed
    assert "recentered_K" in r.parameters
    assert "recentered_L" in r.parameters


def test_strange_general_pairs_pass():
    for seeds in ((501, 502), (503, 504)):
        r = verify_strange(seeded(2, seeds[0]), seeded(2, seeds[1]))
        assert r.passed


def test_milman_pajor_symmetric_example():
    K = cube(3, centered=True)
    r = verify_milman_pajor(K, K)
    # K ∩ -K = K and K + K = 2K when K is symmetric and centered
    assert r.rhs == pytest.approx(volume(K) ** 2 * 2 ** 3, rel=1e-9)
    assert r.lhs == pytest.approx(volume(K) ** 2, rel=1e-12)
    assert r.passed


def test_milman_pajor_seeded_pairs():
    for seeds in ((505, 506), (507, 508)):
        assert verify_milman_pajor(seeded(3, seeds[0]),
                                   seeded(3, seeds[1])).passed


def test_alexandrov_symmetric_equality():
    for r in verify_alexandrov(cube(3, centered=True)):
        assert r.passed
        assert abs(r.margin) <= 1e-9 * max(1.0, r.rhs)


def test_alexandrov_general_lower_bound():
    for r in verify_alexandrov(seeded(3, 601)):
        assert r.passed


def test_remark_EL_simplex_and_endpoints():
    S = simplex(3)
    reports = verify_remark_EL(S, default_lambda_grid(11))
    for r in reports:
        assert r.passed
        if r.parameters["lambda"] in (0.0, 1.0):
            assert r.margin == 0.0
    assert "recentered_K" in reports[0].parameters


def test_godbersen_reports_are_explore_only():
    reports = godbersen_reports(seeded(4, 701))
    assert len(reports) == 3  # j = 1, 2, 3
    for r in reports:
        assert not is_proven(r)
        assert 0 < r.parameters["ratio"] <= 1 + 1e-7


def test_entropy_style_upper_bound_on_mixed_volumes(zoo_profiles):
    # proven bound: V_j <= n^n / (j^j (n-j)^{n-j}) vol(K); the computed
    # profiles must respect it with room to spare
    for label, prof in zoo_profiles.items():
        n = prof.n
        for j in range(1, n):
            bound = n ** n / (j ** j * (n - j) ** (n - j))
            assert prof.values[j] <= bound * prof.vol * (1 + 1e-9), \
                (label, j)


def test_is_proven_classification():
    assert is_proven(InequalityReport("THM1", ("x",), {"n": 7}, 0, 1))
    assert is_proven(InequalityReport("UNBALANCED", ("x",), {"n": 5}, 0, 1))
    assert not is_proven(InequalityReport("UNBALANCED", ("x",), {"n": 6},
                                          0, 1))
    assert not is_proven(InequalityReport("GODBERSEN_J", ("x",),
                                          {"n": 4, "j": 2}, 0, 1))


def test_report_json_bit_reproducible():
    def run():
        K = seeded(3, 801)
        reports = verify_theorem_sum(K, default_lambda_grid(5))
        return json.dumps([report_to_dict(r) for r in reports],
                          sort_keys=True)
    assert run() == run()
