"""Counting functions, threshold schedules, and the ratio report."""

from fractions import Fraction

import pytest

from freecurves.counting import (
    CountingConfig,
    EpsPower,
    EpsTable,
    count_N,
    count_N_liberated,
    lattice_slice,
    r_min,
    ratio_check,
    xi_value,
)
from freecurves.errors import (
    DomainError,
    RankTooLarge,
    UnboundedSlice,
    ZeroFunctional,
)
from freecurves.variety import VarietyModel, pbundle, toy_rho1, toy_rho2


def config(**overrides):
    base = dict(
        q=2,
        br=1,
        m_cap=1,
        beta=(0, 0),
        outside_xi=1,
        eps=EpsPower(1, Fraction(1, 2)),
        delta=Fraction(1, 10),
    )
    base.update(overrides)
    return CountingConfig(**base)


class TestRMin:
    def test_gcd_examples(self):
        assert r_min(toy_rho2()) == 1
        model = VarietyModel(
            rho=2, dim_n=2, minus_k=(2, 4), nef_facets=((1, 0), (0, 1)), chambers=()
        )
        assert r_min(model) == 2
        model3 = VarietyModel(
            rho=3,
            dim_n=2,
            minus_k=(6, 10, 15),
            nef_facets=((1, 0, 0), (0, 1, 0), (0, 0, 1)),
            chambers=(),
        )
        assert r_min(model3) == 1

    def test_zero_functional(self):
        model = VarietyModel(
            rho=1, dim_n=2, minus_k=(0,), nef_facets=((1,),), chambers=()
        )
        with pytest.raises(ZeroFunctional):
            r_min(model)


class TestLatticeSlice:
    def test_quadrant_degree_two(self):
        assert lattice_slice(toy_rho2(), 2) == [
            (0, 1),
            (0, 2),
            (1, 0),
            (1, 1),
            (2, 0),
        ]

    def test_below_minimal_degree_is_empty(self):
        assert lattice_slice(toy_rho1(3), 2) == []

    def test_ray_count(self):
        assert len(lattice_slice(toy_rho1(2), 11)) == 5

    def test_origin_excluded(self):
        assert (0, 0) not in lattice_slice(toy_rho2(), 5)

    def test_unbounded_when_degree_vanishes_on_ray(self):
        model = VarietyModel(
            rho=2, dim_n=2, minus_k=(1, 0), nef_facets=((1, 0), (0, 1)), chambers=()
        )
        with pytest.raises(UnboundedSlice):
            lattice_slice(model, 3)

    def test_unbounded_when_cone_has_a_line(self):
        model = VarietyModel(
            rho=2, dim_n=2, minus_k=(1, 1), nef_facets=((1, 1),), chambers=()
        )
        with pytest.raises(UnboundedSlice):
            lattice_slice(model, 3)

    def test_lattice_rank_cap(self):
        facets = tuple(
            tuple(1 if i == j else 0 for j in range(5)) for i in range(5)
        )
        model = VarietyModel(
            rho=5, dim_n=2, minus_k=(1,) * 5, nef_facets=facets, chambers=()
        )
        with pytest.raises(RankTooLarge):
            lattice_slice(model, 3)

    def test_pbundle_slice_is_finite(self):
        pts = lattice_slice(pbundle(3, 2, [3, 0, 0]), 20)
        assert all(0 < 10 * x + 3 * y <= 20 for x, y in pts)
        assert (1, 3) in pts and (2, 0) in pts

    def test_skew_cone_matches_box_scan(self):
        # cone between the rays (1,0) and (1,1); oracle scans a box far
        # larger than the slice could reach
        model = VarietyModel(
            rho=2,
            dim_n=2,
            minus_k=(2, -1),
            nef_facets=((0, 1), (1, -1)),
            chambers=(),
        )
        expected = sorted(
            (x, y)
            for x in range(-20, 21)
            for y in range(-20, 21)
            if y >= 0 and x >= y and 0 < 2 * x - y <= 4
        )
        assert lattice_slice(model, 4) == expected


class TestXi:
    def test_translate(self):
        model = toy_rho2()
        cfg = config(br=3, m_cap=3, outside_xi=1, beta=(1, 1))
        assert xi_value(model, cfg, (2, 1)) == 3
        assert xi_value(model, cfg, (2, 0)) == 1
        assert xi_value(model, cfg, (1, 1)) == 3


class TestCountN:
    def test_rho1_geometric_sum(self):
        cfg = config(beta=(0,))
        assert count_N(toy_rho1(1), cfg, 3) == 14

    def test_rho2_quadrant(self):
        assert count_N(toy_rho2(), config(), 2) == 16

    def test_zero_xi_gives_zero(self):
        cfg = config(br=0, outside_xi=0)
        assert count_N(toy_rho2(), cfg, 4) == 0

    def test_rho1_closed_form(self):
        # sum over k of br * q^(c k) is a geometric series
        for c in (1, 2):
            for q in (Fraction(2), Fraction(3, 2)):
                for d in (1, 4, 7):
                    cfg = config(beta=(0,), q=q, br=2, m_cap=2)
                    expected = 2 * sum(q ** (c * k) for k in range(1, d + 1))
                    assert count_N(toy_rho1(c), cfg, d) == expected

    def test_translate_reduces_count(self):
        model = toy_rho2()
        inside_only = config(br=1, outside_xi=0, beta=(1, 1))
        everywhere = config()
        assert count_N(model, inside_only, 3) < count_N(model, everywhere, 3)


class TestCountLiberated:
    def test_threshold_one_certifies_nothing(self):
        cfg = config(beta=(0,), eps=EpsTable([(1, 1)]))
        assert count_N_liberated(toy_rho1(1), cfg, 8) == 0

    def test_semistable_threshold_half(self):
        # bound 1 - 2/deg beats 1/2 exactly when deg > 4
        model = toy_rho1(1)
        cfg = config(beta=(0,), eps=EpsTable([(1, Fraction(1, 2))]))
        for d in (5, 9):
            expected = sum(Fraction(2) ** k for k in range(5, d + 1))
            assert count_N_liberated(model, cfg, d) == expected

    def test_liberated_never_exceeds_total(self):
        for model, beta in ((toy_rho1(1), (0,)), (toy_rho2(), (0, 0))):
            cfg = config(beta=beta)
            for d in (1, 2, 5, 9):
                assert count_N_liberated(model, cfg, d) <= count_N(model, cfg, d)


class TestEpsSchedules:
    def test_power_strictness_is_exact(self):
        eps = EpsPower(1, Fraction(1, 2))
        assert not eps.admits(Fraction(1, 2), 4)  # 1/2 == 4^(-1/2)
        assert eps.admits(Fraction(1, 2), 5)
        assert not eps.admits(Fraction(0), 100)
        assert not eps.admits(Fraction(-3), 100)

    def test_power_validation(self):
        with pytest.raises(ValueError):
            EpsPower(0, 1)
        with pytest.raises(ValueError):
            EpsPower(1, 0)

    def test_table_step_lookup(self):
        eps = EpsTable([(1, Fraction(1, 2)), (10, Fraction(1, 4))])
        assert eps.value_at(1) == Fraction(1, 2)
        assert eps.value_at(9) == Fraction(1, 2)
        assert eps.value_at(10) == Fraction(1, 4)
        assert eps.value_at(1000) == Fraction(1, 4)
        with pytest.raises(DomainError):
            eps.value_at(0)

    def test_table_validation(self):
        with pytest.raises(ValueError):
            EpsTable([])
        with pytest.raises(ValueError):
            EpsTable([(1, Fraction(1, 2)), (1, Fraction(1, 3))])
        with pytest.raises(ValueError):
            EpsTable([(1, Fraction(1, 4)), (2, Fraction(1, 2))])
        with pytest.raises(ValueError):
            EpsTable([(1, 0)])


class TestConfigValidation:
    def test_q_must_exceed_one(self):
        with pytest.raises(ValueError):
            config(q=1)

    def test_delta_range(self):
        with pytest.raises(ValueError):
            config(delta=0)
        with pytest.raises(ValueError):
            config(delta=1)

    def test_outside_xi_capped(self):
        with pytest.raises(ValueError):
            config(outside_xi=5, m_cap=2)


class TestRatioCheck:
    def test_finds_threshold_degree(self):
        report = ratio_check(toy_rho2(), config(), range(1, 61))
        assert report.d0 is not None
        assert report.d0 + 30 <= 60
        for row in report.rows:
            if row.d >= report.d0:
                assert row.ratio > Fraction(9, 10)

    def test_rows_are_monotone_data(self):
        report = ratio_check(toy_rho2(), config(), range(1, 21))
        for row in report.rows:
            assert row.n_liberated <= row.n_value
            assert row.liberated <= row.points

    def test_rows_match_direct_counts(self):
        # the bucketed report must agree with the one-shot functions
        model, cfg = toy_rho2(), config()
        report = ratio_check(model, cfg, range(1, 11))
        for row in report.rows:
            assert row.n_value == count_N(model, cfg, row.d)
            assert row.n_liberated == count_N_liberated(model, cfg, row.d)
            assert row.points == len(lattice_slice(model, row.d))

    def test_loose_delta_first_positive_suffix(self):
        report = ratio_check(toy_rho2(), config(delta=Fraction(99, 100)), range(1, 31))
        # ratios are 0 through degree 4 and positive afterwards
        assert report.d0 == 5

    def test_unreachable_threshold_reports_none(self):
        cfg = config(eps=EpsTable([(1, 1)]))
        report = ratio_check(toy_rho2(), cfg, range(1, 16))
        assert report.d0 is None
        assert all(row.liberated == 0 for row in report.rows)

    def test_tsv_rendering(self):
        report = ratio_check(toy_rho1(1), config(beta=(0,)), range(1, 4))
        text = report.render_tsv()
        lines = text.splitlines()
        assert lines[1] == "d\tpoints\tliberated\tN\tN_lib\tratio"
        assert lines[4].startswith("3\t3\t")
        assert "\t14\t" in lines[4]
        assert text.endswith("\n")

    def test_rejects_bad_range(self):
        with pytest.raises(ValueError):
            ratio_check(toy_rho2(), config(), [])
        with pytest.raises(ValueError):
            ratio_check(toy_rho2(), config(), [0, 1])


class TestEhrhartGrowth:
    def test_doubling_ratio_near_four(self):
        model = toy_rho2()
        small = len(lattice_slice(model, 40))
        large = len(lattice_slice(model, 80))
        ratio = Fraction(large, small)
        assert abs(ratio - 4) <= Fraction(4, 5)

    def test_doubling_ratio_rank_one(self):
        model = toy_rho1(1)
        assert len(lattice_slice(model, 80)) == 2 * len(lattice_slice(model, 40))


class TestBetaMismatch:
    def test_wrong_translate_length_rejected(self):
        cfg = config(beta=(0, 0, 0))
        with pytest.raises(ValueError):
            count_N(toy_rho2(), cfg, 2)
        with pytest.raises(ValueError):
            ratio_check(toy_rho2(), cfg, range(1, 4))
