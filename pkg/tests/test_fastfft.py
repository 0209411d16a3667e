"""Tower and radix-2 transforms against the dense oracle, plus exact operation counts."""
from __future__ import annotations

import numpy as np
import pytest

from abelianfft import (
    Subgroup,
    SubgroupTower,
    apply_dense,
    boolean_group,
    build_tower,
    fft_radix2,
    fft_tower,
    make_group,
    predict_cost,
    radix2_group,
    subgroup_from_generators,
    trivial_subgroup,
    walsh_hadamard,
)

from testutil import abelian_group_types, random_vector


def _tower_error(group, rng):
    tower = build_tower(group)
    vec = random_vector(group.order, rng)
    out, _ = fft_tower(group, tower, vec)
    return np.max(np.abs(out - apply_dense(group, vec)))


@pytest.mark.parametrize("group", abelian_group_types(48), ids=lambda g: g.spec_string())
def test_tower_matches_dense_catalog(group):
    assert _tower_error(group, np.random.default_rng(group.order)) < 1e-9


def test_tower_matches_dense_larger():
    rng = np.random.default_rng(77)
    for moduli in ([128], [256], [1024], [2] * 8, [4, 4, 4, 4], [60], [8, 9, 5]):
        assert _tower_error(make_group(moduli), rng) < 1e-9


def test_tower_explicit_z4_example():
    g = make_group([4])
    tower = SubgroupTower(g, (subgroup_from_generators(g, [(2,)]), trivial_subgroup(g)))
    vec = random_vector(4, np.random.default_rng(11))
    out, _ = fft_tower(g, tower, vec)
    assert np.max(np.abs(out - apply_dense(g, vec))) < 1e-9


def test_tower_z6_delta_gives_uniform():
    g = make_group([6])
    tower = SubgroupTower(g, (subgroup_from_generators(g, [(2,)]), trivial_subgroup(g)))
    delta = np.zeros(6, dtype=np.complex128)
    delta[0] = 1.0
    out, _ = fft_tower(g, tower, delta)
    assert np.max(np.abs(out - np.full(6, 1 / np.sqrt(6)))) < 1e-12


def test_build_tower_structure():
    g = make_group([12])
    tower = build_tower(g)
    orders = [s.order for s in tower.levels]
    assert orders[0] < 12 and orders[-1] == 1
    assert tower.indices == (2, 2, 3)
    previous = 12
    for order in orders:
        assert previous % order == 0 and previous // order in (2, 3)
        previous = order


def test_build_tower_index2_for_cyclic_2power():
    tower = build_tower(make_group([16]))
    assert tower.indices == (2, 2, 2, 2)
    with pytest.raises(ValueError):
        build_tower(make_group([1]))


def test_tower_validation():
    g = make_group([4])
    with pytest.raises(ValueError):
        SubgroupTower(g, ())
    with pytest.raises(ValueError):
        SubgroupTower(g, (Subgroup(g, (0, 1, 2, 3)),))  # must shrink below G
    h2 = subgroup_from_generators(g, [(2,)])
    with pytest.raises(ValueError):
        SubgroupTower(g, (h2, h2))  # must keep shrinking
    other = trivial_subgroup(make_group([8]))
    with pytest.raises(ValueError):
        SubgroupTower(g, (other,))  # wrong parent group
    g3 = make_group([2, 2, 2])
    h_even = subgroup_from_generators(g3, [(1, 1, 0), (1, 0, 1)])
    h_first = subgroup_from_generators(g3, [(1, 0, 0)])
    with pytest.raises(ValueError):
        SubgroupTower(g3, (h_even, h_first))  # not nested


def test_fft_tower_rejects_mismatches():
    g = make_group([6])
    tower = build_tower(g)
    with pytest.raises(ValueError):
        fft_tower(make_group([4]), tower, np.ones(4))
    with pytest.raises(ValueError):
        fft_tower(g, tower, np.ones(5))


def test_trivial_tower_costs_dense_scale():
    g = make_group([6])
    tower = SubgroupTower(g, (trivial_subgroup(g),))
    vec = random_vector(6, np.random.default_rng(3))
    out, report = fft_tower(g, tower, vec)
    assert np.max(np.abs(out - apply_dense(g, vec))) < 1e-12
    # one 6x6 recombine (36 mults, 30 adds) plus 6 leaf blocks and the final scale
    assert report.complex_multiplies == 36 + 6 + 6
    assert report.complex_adds == 30


def test_tower_report_carries_single_split_bound():
    for moduli in ([16], [12], [2, 3], [4, 4], [6, 5], [30], [64]):
        g = make_group(moduli)
        tower = build_tower(g)
        vec = random_vector(g.order, np.random.default_rng(g.order))
        _, report = fft_tower(g, tower, vec)
        assert report.predicted_bound == predict_cost(g.order, tower.levels[0].order)
        assert report.complex_multiplies > 0
        assert report.complex_adds > 0


def test_tower_linearity_and_norm():
    rng = np.random.default_rng(42)
    g = make_group([6, 4])
    tower = build_tower(g)
    u = random_vector(g.order, rng)
    v = random_vector(g.order, rng)
    a, b = 0.7 - 0.2j, -1.1 + 0.4j
    combo, _ = fft_tower(g, tower, a * u + b * v)
    fu, _ = fft_tower(g, tower, u)
    fv, _ = fft_tower(g, tower, v)
    assert np.max(np.abs(combo - (a * fu + b * fv))) < 1e-10
    assert np.linalg.norm(fu) == pytest.approx(np.linalg.norm(u), abs=1e-10)


def test_predict_cost_values():
    assert predict_cost(16, 8) == 160
    assert predict_cost(64, 8) == 1024
    assert predict_cost(6, 6) == 6 * 7
    with pytest.raises(ValueError):
        predict_cost(6, 4)
    with pytest.raises(ValueError):
        predict_cost(6, 0)


@pytest.mark.parametrize("m", range(0, 11))
def test_radix2_matches_dense(m):
    g = radix2_group(m)
    vec = random_vector(1 << m, np.random.default_rng(100 + m))
    out, report = fft_radix2(m, vec)
    assert np.max(np.abs(out - apply_dense(g, vec))) < 1e-9
    assert report.complex_multiplies == m * (1 << m)
    assert report.complex_adds == m * (1 << m)
    assert report.predicted_bound == m * (1 << m)


def test_radix2_frozen_small_cases():
    out, _ = fft_radix2(1, np.array([1.0, 0.0]))
    assert np.allclose(out, [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-14)
    delta = np.zeros(8)
    delta[0] = 1.0
    out, _ = fft_radix2(3, delta)
    assert np.allclose(out, np.full(8, 1 / np.sqrt(8)), atol=1e-14)


def test_radix2_count_recursion_constant():
    # count(2^m) - 2*count(2^(m-1)) == a * 2^m with a == 1 for every m
    counts = {}
    for m in range(1, 13):
        vec = random_vector(1 << m, np.random.default_rng(m))
        _, report = fft_radix2(m, vec)
        counts[m] = report.complex_multiplies
    for m in range(2, 13):
        extra = counts[m] - 2 * counts[m - 1]
        assert extra % (1 << m) == 0
        assert extra // (1 << m) == 1


def test_radix2_count_upper_bound_n8():
    n = 8
    vec = random_vector(1 << n, np.random.default_rng(8))
    _, report = fft_radix2(n, vec)
    assert report.complex_multiplies <= 2 * n * (1 << n)


def test_radix2_linearity_and_norm():
    rng = np.random.default_rng(9)
    u = random_vector(64, rng)
    v = random_vector(64, rng)
    a, b = 1.2 + 0.5j, -0.3 + 2.0j
    combo, _ = fft_radix2(6, a * u + b * v)
    fu, _ = fft_radix2(6, u)
    fv, _ = fft_radix2(6, v)
    assert np.max(np.abs(combo - (a * fu + b * fv))) < 1e-10
    assert np.linalg.norm(fu) == pytest.approx(np.linalg.norm(u), abs=1e-10)


def test_radix2_rejects_bad_input():
    with pytest.raises(ValueError):
        fft_radix2(3, np.ones(6))
    with pytest.raises(ValueError):
        fft_radix2(-1, np.ones(1))


def test_radix2_twiddle_drift_bounded():
    # repeated-multiplication tables must stay near the unit circle at size 4096
    vec = random_vector(4096, np.random.default_rng(0))
    out, _ = fft_radix2(12, vec)
    assert np.max(np.abs(out - apply_dense(make_group([4096]), vec))) < 1e-9


@pytest.mark.parametrize("n", range(0, 11))
def test_walsh_hadamard_matches_dense(n):
    g = boolean_group(n)
    vec = random_vector(1 << n, np.random.default_rng(200 + n))
    out = walsh_hadamard(n, vec)
    assert np.max(np.abs(out - apply_dense(g, vec))) < 1e-9


@pytest.mark.parametrize("n", range(0, 11))
def test_walsh_hadamard_self_inverse(n):
    vec = random_vector(1 << n, np.random.default_rng(300 + n))
    twice = walsh_hadamard(n, walsh_hadamard(n, vec))
    assert np.max(np.abs(twice - vec)) < 1e-10


def test_walsh_frozen_small_cases():
    assert np.allclose(walsh_hadamard(1, [1.0, 0.0]), [1 / np.sqrt(2), 1 / np.sqrt(2)], atol=1e-14)
    delta = np.zeros(4)
    delta[0] = 1.0
    assert np.allclose(walsh_hadamard(2, np.full(4, 0.5)), delta, atol=1e-14)
    pair = np.zeros(4)
    pair[0] = pair[3] = 1 / np.sqrt(2)  # indicator of {00, 11}, normalised
    out = walsh_hadamard(2, pair)
    want = np.zeros(4)
    want[0] = want[3] = 1 / np.sqrt(2)
    assert np.allclose(out, want, atol=1e-14)


def test_walsh_rejects_bad_input():
    with pytest.raises(ValueError):
        walsh_hadamard(2, np.ones(3))
    with pytest.raises(ValueError):
        walsh_hadamard(-1, np.ones(1))


def test_group_constructors():
    assert radix2_group(3).moduli == (8,)
    assert boolean_group(3).moduli == (2, 2, 2)
    assert radix2_group(0).order == 1
