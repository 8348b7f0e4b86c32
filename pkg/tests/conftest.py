import numpy as np
from hypothesis import strategies as st

from xdeficit import StateParams


def triangle_samples(n: int, seed: int) -> np.ndarray:
    """Uniform (q1, q2) samples inside the triangle, reproducible by seed."""
    rng = np.random.default_rng(seed)
    q = rng.random((n, 2))
    flip = q.sum(axis=1) > 1.0
    q[flip] = 1.0 - q[flip]
    return q


def triangle_states():
    """Hypothesis strategy drawing valid StateParams."""
    return (
        st.tuples(
            st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
            st.floats(min_value=0.0, max_value=1.0, allow_nan=False),
        )
        .filter(lambda t: t[0] + t[1] <= 1.0)
        .map(lambda t: StateParams(t[0], t[1]))
    )
