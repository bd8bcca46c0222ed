from fractions import Fraction

from hypothesis import settings, strategies as st

from rhpwn.exact import ExactScalar
from rhpwn.stepfn import StepFunction

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)

scalars = st.builds(ExactScalar, small_rationals, small_rationals, small_rationals, small_rationals)

nonzero_scalars = scalars.filter(bool)


@st.composite
def step_functions(draw, lo=0, hi=4, max_pieces=3):
    """Step functions with pieces on a grid of quarters inside (lo, hi]."""
    grid = [Fraction(lo) + Fraction(i, 4) for i in range(int((hi - lo) * 4) + 1)]
    points = sorted(draw(st.sets(st.sampled_from(grid), min_size=0, max_size=2 * max_pieces)))
    pieces = []
    for a, b in zip(points[::2], points[1::2]):
        pieces.append((a, b, draw(scalars)))
    return StepFunction(pieces)
