import random
import sys
from pathlib import Path

from hypothesis import assume
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from unramtori.lattice import IntMatrix  # noqa: E402
from unramtori.verify import SMALL_Q, random_datum  # noqa: E402


@st.composite
def int_matrices(draw, max_dim=5, bound=9, square=False):
    r = draw(st.integers(1, max_dim))
    c = r if square else draw(st.integers(1, max_dim))
    entries = draw(st.lists(st.integers(-bound, bound), min_size=r * c, max_size=r * c))
    return IntMatrix(r, c, tuple(entries))


@st.composite
def torus_data(draw):
    return random_datum(random.Random(draw(st.integers(0, 10**9))))


@st.composite
def finite_tori_params(draw, max_points=300):
    d = draw(torus_data())
    q = draw(st.sampled_from(SMALL_Q))
    assume(abs((q * d.f0 - IntMatrix.identity(d.rank)).det()) <= max_points)
    return d, q
