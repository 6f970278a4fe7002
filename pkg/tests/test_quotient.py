import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from amalgam.errors import MalformedPermutation, ParamMismatch, RelationViolation
from amalgam.fox import build_d0, build_d1, build_laplacian
from amalgam.group_ring import GroupRingElement, make_p, make_q
from amalgam.linalg import RationalMatrix, rank
from amalgam.presentation import parse_params
from amalgam.quotient import (
    builtin, collapsed_rep, cyclic_rep, joint_fixed_dim, load_rep, orbit_count, product_rep,
    psl2_mod, represent, run_checks, sl2_mod, spectral_gap_estimate, trivial_rep,
    verify_decompositions, verify_kernel_identity, verify_lemma31,
)
from amalgam.verify import random_element


def test_load_rep_valid(sl2):
    rep = load_rep({"degree": 1, "s": [0], "t": [0]}, sl2)
    assert rep == trivial_rep(sl2)
    doc = json.dumps({"params": {"m": 4, "n": 6, "d": 2}, **sl2_mod(2).to_json()})
    assert load_rep(doc).degree == 6


def test_load_rep_errors(sl2):
    # s of order 3 breaks s^4 = 1
    with pytest.raises(RelationViolation) as info:
        load_rep({"degree": 3, "s": [1, 2, 0], "t": [0, 1, 2]}, sl2)
    assert info.value.relation == "s^4 = 1"
    with pytest.raises(RelationViolation) as info:
        load_rep({"degree": 4, "s": [1, 2, 3, 0], "t": [0, 1, 2, 3]}, sl2)
    assert info.value.relation == "s^2 = t^3"
    with pytest.raises(MalformedPermutation):
        load_rep({"degree": 2, "s": [0, 0], "t": [0, 1]}, sl2)
    with pytest.raises(MalformedPermutation):
        load_rep({"degree": 2, "s": [0, 1]}, sl2)
    with pytest.raises(MalformedPermutation):
        load_rep([0, 1], sl2)
    with pytest.raises(ParamMismatch):
        load_rep({"degree": 1, "s": [0], "t": [0]})


def test_builtin_degrees():
    assert sl2_mod(2).degree == 6
    assert sl2_mod(3).degree == 24
    assert psl2_mod(3).degree == 12
    assert builtin("sl2_z_mod4").degree == 48
    assert builtin("psl2_z_mod5").degree == 60
    with pytest.raises(KeyError):
        builtin("gl2_z_mod3")


@pytest.mark.parametrize("rep", [sl2_mod(3), psl2_mod(3)], ids=lambda r: r.name)
def test_represent_is_a_homomorphism(rep):
    rng = random.Random(17)
    one = GroupRingElement.one(rep.params)
    assert represent(one, rep) == RationalMatrix.identity(rep.degree)
    for _ in range(8):
        a, b = random_element(rep.params, rng), random_element(rep.params, rng)
        assert represent(a * b, rep) == represent(a, rep) @ represent(b, rep)
        assert represent(a.star(), rep) == represent(a, rep).transpose()


def test_projection_images(sl2):
    rep = sl2_mod(3)
    P = represent(make_p(sl2), rep)
    assert P @ P == P and P.is_symmetric()
    # s acts freely with order 4, so p averages over orbits of size 4
    assert rank(P) == rep.degree // 4


def test_laplacian_gram_identity():
    rep = sl2_mod(2)
    p = rep.params
    D0, D1 = represent(build_d0(p), rep), represent(build_d1(p), rep)
    lap = represent(build_laplacian(p), rep)
    assert lap == D0 @ D0.transpose() + D1.transpose() @ D1
    assert lap.is_symmetric()
    assert min(np.linalg.eigvalsh(lap.to_float())) > -1e-9


def test_param_mismatch(sl2):
    with pytest.raises(ParamMismatch):
        represent(GroupRingElement.one(sl2), psl2_mod(2))


def test_kernel_identity_trivial(sl2):
    r = verify_kernel_identity(trivial_rep(sl2))
    assert (r["laplacian_nullity"], r["rank_formula"]) == (0, 0)
    assert r["passed"]


def test_kernel_identity_sl2_mod2():
    r = verify_kernel_identity(sl2_mod(2))
    assert (r["rank_h"], r["rank_p"], r["rank_q"], r["joint_fixed_dim"]) == (6, 3, 2, 1)
    assert r["laplacian_nullity"] == r["rank_formula"] == 2
    assert r["embedding_spans_kernel"]


def test_kernel_identity_sl2_mod3():
    r = verify_kernel_identity(sl2_mod(3))
    assert (r["rank_h"], r["rank_p"], r["rank_q"], r["joint_fixed_dim"]) == (12, 6, 4, 1)
    assert r["laplacian_nullity"] == r["rank_formula"] == 3
    assert Fraction(r["kernel_ratio"]) == Fraction(1, 12) + Fraction(1, 24)
    assert Fraction(r["class_trace_ratio"]) == Fraction(1, 12)


@pytest.mark.parametrize("rep", [psl2_mod(2), psl2_mod(3), sl2_mod(4)], ids=lambda r: r.name)
def test_kernel_identity_builtin(rep):
    assert verify_kernel_identity(rep)["passed"]


def test_kernel_identity_ad_hoc(params):
    for rep in (cyclic_rep(params), collapsed_rep(params, 6, 1), collapsed_rep(params, 9, 2),
                product_rep(cyclic_rep(params), collapsed_rep(params, 3, 3))):
        r = verify_kernel_identity(rep)
        assert r["passed"], r


def test_form_kernel_is_fixed_space(sl2):
    r = verify_lemma31(trivial_rep(sl2))
    assert r["form_kernel_dim"] == 1 == r["joint_fixed_dim"]
    r = verify_lemma31(sl2_mod(2))
    assert r["joint_fixed_dim"] == 1 and r["kernel_is_fixed_space"]
    r = verify_lemma31(sl2_mod(3))
    assert r["passed"] and r["restricted_kernel_dim"] == 0


def test_decompositions(sl2):
    r = verify_decompositions(trivial_rep(sl2))
    assert r["dims"] == {"H1": 0, "H2": 1, "H3": 1, "H2~": 2, "H3~": 0}
    assert r["passed"]
    for rep in (sl2_mod(2), sl2_mod(3), psl2_mod(3)):
        r = verify_decompositions(rep)
        assert r["passed"], r
        assert r["dims"]["H2~"] == r["rank_p"] + r["rank_q"]
        assert r["dims"]["H3"] - r["dims"]["H3~"] == r["joint_fixed_dim"] == orbit_count(rep)


def test_gap_trivial_closed_form(params):
    m, n, a, b = params.m, params.n, params.s_cosets, params.t_cosets
    # trivial rep: Laplacian is [[m^2 + a^2, -ab], [-ab, n^2 + b^2]]
    x, y, z = m * m + a * a, -a * b, n * n + b * b
    smallest = (x + z) / 2 - math.sqrt(((x - z) / 2) ** 2 + y * y)
    assert spectral_gap_estimate(trivial_rep(params)) == pytest.approx(smallest, rel=1e-12)


def test_gap_positive_and_relabel_invariant():
    rep = sl2_mod(2)
    gap = spectral_gap_estimate(rep)
    assert gap > 1e-9
    sigma = list(range(rep.degree))
    random.Random(2).shuffle(sigma)
    assert spectral_gap_estimate(rep.relabel(sigma)) == pytest.approx(gap, abs=1e-9)


def test_joint_fixed_space(params):
    for rep in (trivial_rep(params), collapsed_rep(params, 7, 4)):
        assert joint_fixed_dim(rep) == orbit_count(rep)


def test_run_checks_report():
    report = run_checks(psl2_mod(2))
    assert report["schema"] == "amalgam.quotient/1"
    assert set(report["checks"]) == {"kernel", "lemma31", "decomp", "gap"}
    assert report["passed"]
    assert json.loads(json.dumps(report)) == report
