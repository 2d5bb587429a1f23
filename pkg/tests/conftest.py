import pytest

from qbfunc.roots import parabolic_datum
from qbfunc.freealg import FreeOracle
from qbfunc.pbw import PBWAlgebra
from qbfunc import bfunc as bf

SEED = 7

_algebras = {}
_results = {}
_invariants = {}


def algebra(family, rank, i0=None):
    """Session-cached derived algebra for one regular pair."""
    key = (family, rank, i0)
    if key not in _algebras:
        pd = parabolic_datum(family, rank, i0)
        table = FreeOracle(pd).derive_table(seed=SEED)
        _algebras[key] = PBWAlgebra(table)
    return _algebras[key]


def invariant(family, rank, i0=None, gauge="explicit"):
    key = (family, rank, i0, gauge)
    if key not in _invariants:
        A = algebra(family, rank, i0)
        _invariants[key] = (bf.construct_f_explicit(A) if gauge == "explicit"
                            else bf.construct_f_intrinsic(A))
    return _invariants[key]


def bresult(family, rank, i0=None, gauge="explicit", smax=None):
    """Session-cached full b-function pipeline result."""
    key = (family, rank, i0, gauge, smax)
    if key not in _results:
        A = algebra(family, rank, i0)
        f = invariant(family, rank, i0, gauge)
        _results[key] = bf.compute_bfunc(A, f, gauge, smax=smax)
    return _results[key]


@pytest.fixture(scope="session")
def a3():
    return algebra("A", 3)
