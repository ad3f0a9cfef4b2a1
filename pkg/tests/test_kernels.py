import numpy as np
import pytest

from archliq import SeedSpec, backend
from archliq import _kernels_py

compiled = pytest.importorskip(
    "archliq._kernels", reason="compiled kernel not built; backend tests need it"
)


def random_inputs(n, seed=0):
    gen = SeedSpec(seed).generator()
    return gen.standard_normal(n), gen.standard_normal(n) ** 2


@pytest.mark.parametrize("n", [0, 1, 7, 1000, 100_000])
def test_backends_bitwise_identical(n):
    eps, liq = random_inputs(n, seed=n)
    out_c = compiled.arch_recursion(eps, liq, 1.0, 0.1, 0.5, 1.7)
    out_py = _kernels_py.arch_recursion(eps, liq, 1.0, 0.1, 0.5, 1.7)
    assert out_c[2] == out_py[2] == -1
    np.testing.assert_array_equal(out_c[0], out_py[0])
    np.testing.assert_array_equal(out_c[1], out_py[1])


def test_overflow_reported_at_same_index():
    eps = np.full(64, 1e160)
    liq = np.ones(64)
    out_c = compiled.arch_recursion(eps, liq, 1.0, 0.1, 0.5, 1.7)
    out_py = _kernels_py.arch_recursion(eps, liq, 1.0, 0.1, 0.5, 1.7)
    assert out_c[2] == out_py[2] >= 0
    # values up to the abort index agree
    bad = out_c[2]
    np.testing.assert_array_equal(out_c[0][: bad + 1], out_py[0][: bad + 1])


def test_nan_input_aborts():
    eps = np.ones(8)
    liq = np.ones(8)
    liq[3] = np.nan
    _, _, bad = _kernels_py.arch_recursion(eps, liq, 1.0, 0.1, 0.5, 1.7)
    assert bad == 4
    _, _, bad_c = compiled.arch_recursion(eps, liq, 1.0, 0.1, 0.5, 1.7)
    assert bad_c == 4


def test_shape_mismatch():
    with pytest.raises(ValueError):
        compiled.arch_recursion(np.ones(3), np.ones(4), 1.0, 0.1, 0.5, 1.7)
    with pytest.raises(ValueError):
        _kernels_py.arch_recursion(np.ones(3), np.ones(4), 1.0, 0.1, 0.5, 1.7)


def test_backend_reports_compiled():
    assert backend() in ("compiled", "python")
