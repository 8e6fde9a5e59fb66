import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bridgerect.moves import CATALOG, TwistSpec, apply_twists
from bridgerect.sphere import EPSILON

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

twists = st.builds(TwistSpec, st.sampled_from(CATALOG), st.sampled_from([1, -1]))
twist_words = st.lists(twists, min_size=0, max_size=8)


@st.composite
def systems(draw, max_len=8):
    """Images of epsilon under random catalog twist words."""
    word = draw(st.lists(twists, min_size=0, max_size=max_len))
    return apply_twists(word, EPSILON)


def random_pairs(rng, count, max_len=8):
    gens = [TwistSpec(c, s) for c in CATALOG for s in (1, -1)]
    out = []
    for _ in range(count):
        A = apply_twists([rng.choice(gens) for _ in range(rng.randint(0, max_len))], EPSILON)
        B = apply_twists([rng.choice(gens) for _ in range(rng.randint(1, max_len))], EPSILON)
        out.append((A, B))
    return out


# acceptance verdicts, filled by test_acceptance and printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
