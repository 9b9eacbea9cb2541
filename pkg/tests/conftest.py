import os
import sys
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from hkit.matrix import ExactMatrix  # noqa: E402
from hkit.poly import CommPoly  # noqa: E402
from hkit.scalar import GaussRat  # noqa: E402

settings.register_profile("hkit", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("hkit")

rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gauss = st.builds(GaussRat, rationals, rationals)
nonzero_gauss = gauss.filter(bool)


def matrices(dim):
    return st.lists(st.lists(gauss, min_size=dim, max_size=dim), min_size=dim, max_size=dim).map(ExactMatrix)


def any_matrices(max_dim=3):
    return st.integers(1, max_dim).flatmap(matrices)


def pairs(max_dim=3):
    return st.integers(1, max_dim).flatmap(lambda d: st.tuples(matrices(d), matrices(d)))


def polys(max_degree=3, max_terms=5):
    exps = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)).filter(
        lambda e: e[0] + e[1] <= max_degree)
    return st.dictionaries(exps, gauss, max_size=max_terms).map(CommPoly)
