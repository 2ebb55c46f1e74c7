from fractions import Fraction

import pytest

from cubicfm.fmcount import (
    InvalidKappaError,
    cubic_fm_count,
    epsilon,
    generator_q,
    isotropic_elements,
    isotropic_orbits_under_negation,
    ma_bound_generic,
    oguiso_count,
    twisted_decomposition,
    twisted_fm_count,
    valid_kappas,
)
from cubicfm.hassett import InadmissibleError, has_associated_k3
from cubicfm.oracle import k3_partner_count_by_enumeration, twisted_pairs


def test_oguiso_examples():
    assert oguiso_count(2) == 1
    assert oguiso_count(42) == 2
    assert oguiso_count(546) == 4
    with pytest.raises(ValueError):
        oguiso_count(7)


def test_oguiso_depends_on_radical():
    for n in (3, 5, 7, 15, 21):
        for a in (1, 2, 3):
            base = oguiso_count(2**a * n)
            assert oguiso_count(2**a * n**2) == base
            assert oguiso_count(2**a * n**3) == base


def test_oguiso_matches_enumeration():
    for deg in range(2, 3000, 2):
        assert oguiso_count(deg) == k3_partner_count_by_enumeration(deg)


@pytest.mark.parametrize("d, m, p", [(182, 2, 2), (42, 2, 1), (546, 4, 2)])
def test_cubic_count_examples(d, m, p):
    rep = cubic_fm_count(d)
    assert (rep.m, rep.p_cubic) == (m, p)


def test_cubic_count_inadmissible():
    with pytest.raises(InadmissibleError) as e:
        cubic_fm_count(8)
    assert "4 | d" in e.value.reasons


def test_cubic_count_closed_form_and_bounds():
    for d in range(7, 1001):
        if not has_associated_k3(d):
            continue
        rep = cubic_fm_count(d)
        assert rep.p_cubic >= 1
        if d % 6 == 2:
            assert rep.p_cubic == rep.m
            assert (rep.p_cubic == 1) == (rep.m <= 1)
        else:
            assert rep.p_cubic == -(-rep.m // 2)
            assert (rep.p_cubic == 1) == (rep.m <= 2)
        if rep.nontrivial_hypothesis:
            assert rep.closed_form == rep.p_cubic


def test_twisted_decomposition():
    assert twisted_decomposition(50, 5) == 2
    assert twisted_decomposition(338, 13) == 2
    with pytest.raises(InvalidKappaError):
        twisted_decomposition(50, 3)
    with pytest.raises(InvalidKappaError):
        twisted_decomposition(36, 2)  # c = 9 is odd
    with pytest.raises(InvalidKappaError):
        twisted_decomposition(50, 1)


@pytest.mark.parametrize("d, k, mp, lower", [(50, 5, 2, 2), (338, 13, 6, 6), (8, 2, 1, 1)])
def test_twisted_examples(d, k, mp, lower):
    rep = twisted_fm_count(d, k)
    assert (rep.m_prime, rep.lower_bound_cubic) == (mp, lower)
    assert ma_bound_generic(d, k) == mp


def test_twisted_rejects_nine():
    with pytest.raises(InadmissibleError):
        twisted_fm_count(72, 2)


def test_valid_kappas():
    assert valid_kappas(50) == [5]
    assert valid_kappas(8) == [2]
    assert valid_kappas(14) == []
    assert valid_kappas(200) == [2, 5, 10]


def test_isotropic_examples():
    assert isotropic_elements(50, Fraction(33, 50), 5) == {10, 20, 30, 40}
    assert isotropic_elements(50, Fraction(33, 50), 1) == {0}
    assert isotropic_elements(8, Fraction(5, 8), 2) == {4}
    assert generator_q(50) == Fraction(33, 50)
    with pytest.raises(InadmissibleError):
        generator_q(54)


def test_negation_orbits():
    assert isotropic_orbits_under_negation({10, 20, 30, 40}, 50) == 2
    assert isotropic_orbits_under_negation({4}, 8) == 1
    assert isotropic_orbits_under_negation({0}, 50) == 1
    with pytest.raises(ValueError):
        isotropic_orbits_under_negation({10}, 50)


def test_epsilon():
    assert [epsilon(r) for r in (1, 2, 3, 5)] == [1, 1, 2, 2]
    with pytest.raises(ValueError):
        epsilon(0)


def test_ma_sweep():
    pairs = list(twisted_pairs(2000, 13))
    assert pairs
    for d, k in pairs:
        assert ma_bound_generic(d, k) == twisted_fm_count(d, k).m_prime
