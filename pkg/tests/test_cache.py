import os

import pytest

from conftest import algebra, SEED
from qbfunc.cache import (table_to_text, save_table, load_table, get_table,
                          cache_name, StaleCache)
from qbfunc.pbw import PBWAlgebra


def test_round_trip(tmp_path):
    A = algebra("A", 3, 1)
    path = str(tmp_path / cache_name(A.pd, SEED, "rank_complete"))
    save_table(A.table, path, SEED, "rank_complete")
    loaded = load_table(path, A.pd, SEED, "rank_complete")
    assert loaded.straighten == A.table.straighten
    assert loaded.rprime == A.table.rprime
    assert loaded.adf == A.table.adf
    assert loaded.parent == A.table.parent


def test_byte_identical(tmp_path):
    A = algebra("A", 3, 1)
    t1 = table_to_text(A.table, SEED, "rank_complete")
    t2 = table_to_text(A.table, SEED, "rank_complete")
    assert t1 == t2
    from qbfunc.freealg import FreeOracle
    from qbfunc.roots import parabolic_datum
    fresh = FreeOracle(parabolic_datum("A", 3, 1)).derive_table(seed=SEED)
    assert table_to_text(fresh, SEED, "rank_complete") == t1


def test_stale_on_config_mismatch(tmp_path):
    A = algebra("A", 3, 1)
    path = str(tmp_path / "t.table")
    save_table(A.table, path, SEED, "rank_complete")
    with pytest.raises(StaleCache):
        load_table(path, A.pd, SEED + 1, "rank_complete")
    with pytest.raises(StaleCache):
        load_table(path, A.pd, SEED, "probabilistic")


def test_stale_on_tamper(tmp_path):
    A = algebra("A", 3, 1)
    path = str(tmp_path / "t.table")
    save_table(A.table, path, SEED, "rank_complete")
    text = open(path).read()
    bad = text.replace("q^-1", "q^-2", 1)
    assert bad != text
    open(path, "w").write(bad)
    with pytest.raises(StaleCache):
        load_table(path, A.pd, SEED, "rank_complete")


def test_tampered_rule_breaks_confluence(tmp_path):
    # fault injection: perturb one straightening coefficient and the
    # confluence / Hilbert certificates must notice
    from qbfunc.freealg import RelationTable
    from qbfunc.scalars import q_power
    A = algebra("A", 3, 1)
    rules = dict(A.table.straighten)
    (b, a) = (2, 1)
    perturbed = tuple((mono, c * q_power(1)) for mono, c in rules[(b, a)])
    assert perturbed != rules[(b, a)]
    rules[(b, a)] = perturbed
    bad = RelationTable(pd=A.pd, straighten=rules, rprime=A.table.rprime,
                        adf=A.table.adf, parent=A.table.parent)
    B = PBWAlgebra(bad)
    assert B.confluence_check() != [] or \
        any(not r["triangular_ok"] for r in B.hilbert_check(3))


def test_get_table_uses_cache(tmp_path):
    A = algebra("A", 3, 1)
    d = str(tmp_path)
    t1 = get_table(A.pd, SEED, "rank_complete", cache_dir=d)
    path = os.path.join(d, cache_name(A.pd, SEED, "rank_complete"))
    assert os.path.exists(path)
    t2 = get_table(A.pd, SEED, "rank_complete", cache_dir=d)
    assert t2.verification.get("source") == "cache"
    assert t2.straighten == t1.straighten
