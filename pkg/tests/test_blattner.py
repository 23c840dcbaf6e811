import itertools

import pytest

from gsp_pullback import blattner as B


def test_dictionary():
    assert B.hc_to_minimal_ktype((4, 1)) == (5, 3)
    assert B.minimal_ktype_to_hc((5, 3)) == (4, 1)
    for n in range(1, 5):
        k = 9
        lam = tuple(k - j for j in range(1, n + 1))
        assert B.hc_to_minimal_ktype(lam) == (k,) * n
    with pytest.raises(ValueError):
        B.minimal_ktype_to_hc((3, 4))


def test_parity():
    assert B.parity_condition((4, 1))
    assert not B.parity_condition((3, 1))
    assert all(B.parity_condition((l,)) for l in range(1, 8))


def test_root_system_sizes():
    for n in range(1, 5):
        rs = B.root_system(n)
        assert len(rs.noncompact_roots) == n * (n + 1) // 2
        assert len(rs.compact_roots) == n * (n - 1) // 2
        assert len(list(rs.weyl_group())) == [1, 1, 2, 6, 24][n]


def test_q_count_examples():
    assert B.q_count((0, 0)) == 1
    assert B.q_count((2, 2)) == 2
    assert B.q_count((0, 2)) == 1
    assert B.q_count((-2, 4)) == 0


def test_q_count_dp_matches_naive_small():
    for mu in itertools.product(range(7), repeat=2):
        assert B.q_count(mu) == B.q_count_naive(mu)


def test_blattner_examples():
    assert B.blattner_multiplicity((4, 1), (5, 5)) == 1
    assert B.blattner_multiplicity((4, 1), (7, 7)) == 1
    terms = {perm: (sign, q) for perm, sign, _, q in B.blattner_terms((4, 1), (7, 7)) if q}
    assert sorted(v for v in terms.values()) == [(-1, 1), (1, 2)]
    for n in range(1, 5):
        k = n + 3
        lam = tuple(k - j for j in range(1, n + 1))
        assert B.blattner_multiplicity(lam, (k,) * n) == 1


def test_minimal_ktype_has_multiplicity_one():
    for n in range(1, 4):
        for lam in B.parity_valid_parameters(n, 8):
            assert B.blattner_multiplicity(lam, B.hc_to_minimal_ktype(lam)) == 1
