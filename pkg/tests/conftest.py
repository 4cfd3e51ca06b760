import os

from hypothesis import HealthCheck, settings, strategies as st

from reflgroupoids import etaseq

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def eta_sequences(draw, max_len=10):
    """Random eta-sequence grown from (1, 1, 1) by random expansions."""
    seq = etaseq.BASE
    steps = draw(st.integers(0, max_len - 3))
    for _ in range(steps):
        gap = draw(st.integers(1, len(seq)))
        seq = etaseq.expand(seq, gap)
    return seq
