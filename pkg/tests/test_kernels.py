import itertools

import pytest
from hypothesis import given, settings, strategies as st

from bubblekit import kernels


def brute(leads, weights, max_weight):
    top = [max_weight // w for w in weights]
    n = 0
    for e in itertools.product(*[range(k + 1) for k in top]):
        if sum(a * w for a, w in zip(e, weights)) > max_weight:
            continue
        if any(all(a >= b for a, b in zip(e, m)) for m in leads):
            continue
        n += 1
    return n


backends = [kernels.count_standard_py]
if kernels.count_standard_compiled is not None:
    backends.append(kernels.count_standard_compiled)


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("count", backends)
def test_edge_cases(count):
    assert count([], [1, 1], -1) == 0
    assert count([], [1, 1], 0) == 1
    assert count([(0, 0)], [1, 1], 10) == 0
    assert count([], [1], 5) == 6
    assert count([(0, 0, 2)], [1, 1, 1], 2) == 9


@pytest.mark.parametrize("count", backends)
@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.tuples(*[st.integers(0, 4)] * n), max_size=4),
    st.tuples(*[st.integers(1, 4)] * n),
    st.integers(-1, 14),
)))
def test_matches_enumeration(count, case):
    leads, weights, max_weight = case
    assert count(leads, list(weights), max_weight) == brute(leads, weights, max_weight)


@pytest.mark.skipif(kernels.count_standard_compiled is None, reason="extension not built")
def test_backends_agree_on_large_input():
    leads = [(0, 0, 0, 3), (1, 1, 0, 0), (0, 2, 1, 0)]
    w = [2, 3, 1, 5]
    assert kernels.count_standard_py(leads, w, 300) == kernels.count_standard_compiled(leads, w, 300)


def test_pure_python_switch():
    import os
    import subprocess
    import sys
    code = ("from bubblekit import kernels, groebner; from bubblekit.polycore import parse_polynomial as p;"
            "print(kernels.BACKEND, groebner.standard_monomial_count([p('x*y - z^2', ('x','y','z'))], (1,1,1), 3))")
    env = dict(os.environ, BUBBLEKIT_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "9"]
