import numpy as np
import pytest

import dissipative_symplectic as ds

# acceptance verdicts, printed once at the end of the session
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def central_diff(fun, x, step=None):
    """Central-difference gradient of a scalar function of a 1-D array."""
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for i in range(x.size):
        d = step if step is not None else 1e-5 * (1.0 + abs(x[i]))
        xp, xm = x.copy(), x.copy()
        xp[i] += d
        xm[i] -= d
        g[i] = (fun(xp) - fun(xm)) / (xp[i] - xm[i])
    return g


def rel_err(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.abs(b))))


def bundled_lagrangians():
    """(name, LagrangianSystem) for every bundled problem."""
    lin, _ = ds.linear_decay()
    qd, _ = ds.quadratic_drag()
    return [
        ("linear", ds.least_squares_adapter(lin)),
        ("qdrag", ds.least_squares_adapter(qd)),
        ("channel", ds.channel_lagrangian(ds.ChannelParams(2.0))),
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
