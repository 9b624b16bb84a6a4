"""Hypothesis strategies for small frames and belief functions."""

from fractions import Fraction

from hypothesis import strategies as st

from dsgraphoid.frame import build_frame
from dsgraphoid.massfun import MassFunction


def frame_of(sizes):
    return build_frame([(f"V{i}", tuple(f"v{i}{j}" for j in range(1, s + 1))) for i, s in enumerate(sizes)])


small_frames = st.lists(st.integers(1, 3), min_size=1, max_size=3).filter(
    lambda s: 1 < __import__("math").prod(s) <= 8
).map(frame_of)


@st.composite
def proper_functions(draw, frames=small_frames, max_focal=5, universe=False):
    frame = draw(frames)
    full = frame.full_mask
    masks = draw(st.lists(st.integers(1, full), min_size=1, max_size=max_focal, unique=True))
    weights = draw(st.lists(st.integers(1, 9), min_size=len(masks), max_size=len(masks)))
    focal = {m: Fraction(w) for m, w in zip(masks, weights)}
    if universe:
        focal[full] = focal.get(full, Fraction(0)) + draw(st.integers(1, 9))
    total = sum(focal.values())
    return MassFunction(frame, {k: v / total for k, v in focal.items()})
