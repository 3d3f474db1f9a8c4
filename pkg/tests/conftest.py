from fractions import Fraction

from hypothesis import strategies as st

from stirtool.exact import LambdaPoly

rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
small_rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 6))


@st.composite
def lambda_polys(draw, max_degree=5):
    return LambdaPoly(draw(st.lists(small_rationals, max_size=max_degree + 1)))


# (criterion number, description, passed, seconds), filled by test_acceptance
ACCEPTANCE_LOG: list[tuple[int, str, bool, float]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, passed, secs in sorted(ACCEPTANCE_LOG):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {num}. {desc} ({secs:.2f}s)")
