from fractions import Fraction

import pytest

from qbfunc.roots import (build_root_system, parabolic_datum, reduced_word,
                          longest_element, mat_apply)


def test_positive_root_counts():
    assert len(build_root_system("A", 5).positive_roots) == 15
    assert len(build_root_system("B", 3).positive_roots) == 9
    assert len(build_root_system("C", 3).positive_roots) == 9
    assert len(build_root_system("D", 4).positive_roots) == 12
    assert len(build_root_system("E7", 7).positive_roots) == 63


def test_root_lengths():
    rs = build_root_system("B", 3)
    # marked vertex 1 is long in the (alpha,alpha)=2-for-short normalization
    assert rs.d == (2, 2, 1)
    rs = build_root_system("C", 3)
    assert rs.d == (1, 1, 2)


def test_fundamental_weight_pairing():
    for fam, rank in [("A", 4), ("B", 3), ("C", 3), ("D", 5), ("E7", 7)]:
        rs = build_root_system(fam, rank)
        for j in range(rank):
            w = rs.fundamental_weight(j)
            for i in range(rank):
                # (varpi_j, alpha_i) = delta_ij * d_i
                assert rs.pair(w, rs.simple_root(i)) == \
                    (rs.d[i] if i == j else 0)


REGULAR = [
    ("A", 3, 1, 2, 4), ("A", 5, 2, 3, 9),
    ("B", 3, 0, 2, 5), ("C", 3, 2, 3, 6),
    ("D", 4, 0, 2, 6), ("D", 4, 3, 2, 6), ("D", 6, 5, 3, 15),
    ("E7", 7, 0, 3, 27), ("A", 1, 0, 1, 1),
]


@pytest.mark.parametrize("fam,rank,i0,r,k", REGULAR)
def test_regular_pairs(fam, rank, i0, r, k):
    pd = parabolic_datum(fam, rank, i0)
    assert pd.i0 == i0
    assert pd.r == r
    assert pd.num_generators == k
    # abelian nilradical: every complement root has i0-coordinate exactly 1
    for beta in pd.complement_roots:
        assert beta[i0] == 1
    # the convex order enumerates the complement exactly, starting at alpha_{i0}
    assert set(pd.convex_order) == set(pd.complement_roots)
    assert pd.convex_order[0] == pd.rs.simple_root(i0)
    # the defining weight is minus twice a fundamental weight
    varpi = pd.rs.fundamental_weight(i0)
    assert pd.lambda_r == tuple(-2 * c for c in varpi)


def test_non_regular_pairs_rejected():
    with pytest.raises(ValueError):
        parabolic_datum("A", 4, 1)      # even block sizes required
    with pytest.raises(ValueError):
        parabolic_datum("B", 3, 2)      # only vertex 1 works in type B
    with pytest.raises(ValueError):
        parabolic_datum("C", 2, 1)


def test_reduced_word_is_reduced():
    from qbfunc.roots import mat_mul, mat_identity
    rs = build_root_system("A", 3)
    w0 = longest_element(rs, tuple(range(3)))
    word = reduced_word(rs, w0)
    assert len(word) == 6  # number of positive roots
    acc = mat_identity(3)
    for i in word:
        acc = mat_mul(acc, rs.reflection_matrix(i))
    assert acc == w0


def test_convex_order_compatibility():
    # corrections to a straightened pair must lie between the pair:
    # the order must be convex, i.e. if beta_a + beta_b is a root it
    # appears between positions a and b
    for fam, rank, i0 in [("A", 3, 1), ("B", 3, 0), ("C", 3, 2), ("D", 4, 0)]:
        pd = parabolic_datum(fam, rank, i0)
        order = pd.convex_order
        allroots = set(pd.rs.positive_roots)
        for a in range(len(order)):
            for b in range(a + 1, len(order)):
                s = tuple(x + y for x, y in zip(order[a], order[b]))
                if s in allroots:
                    t = order.index(s)
                    assert a < t < b
