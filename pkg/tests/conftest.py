import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from chanassign.model import ChannelInstance

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def instances(draw, min_n=0, max_n=6, max_w=3):
    n = draw(st.integers(min_n, max_n))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            w = draw(st.integers(0, max_w))
            if w:
                edges.append((u, v, w))
    return ChannelInstance(n, tuple(edges))


def K2(w):
    return ChannelInstance(2, ((0, 1, w),))


def path(*ws):
    return ChannelInstance(len(ws) + 1, tuple((i, i + 1, w) for i, w in enumerate(ws)))


def complete(n, w):
    return ChannelInstance(n, tuple((u, v, w) for u in range(n) for v in range(u + 1, n)))


@pytest.fixture
def tmp_file(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write
