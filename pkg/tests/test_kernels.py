import itertools
import subprocess
import sys

import numpy as np
import pytest

from gsp_pullback import _kernels
from gsp_pullback._kernels import python_kernels


def test_backend_selected():
    assert _kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("n, bounds", [(1, (12,)), (2, (10, 10)), (3, (8, 8, 8))])
def test_q_table_backends_agree(n, bounds):
    a = np.asarray(_kernels.q_table(n, bounds))
    b = python_kernels.q_table(n, bounds)
    assert a.shape == b.shape and np.array_equal(a, b)


def test_q_table_n1():
    # Q(m e_1) counts multiples of 2 e_1
    t = python_kernels.q_table(1, (6,))
    assert list(t) == [1, 0, 1, 0, 1, 0, 1]


@pytest.mark.parametrize("n, p, order", [(1, 2, 6), (1, 3, 24), (1, 5, 120), (2, 2, 720)])
def test_symplectic_counts(n, p, order):
    assert _kernels.count_symplectic_mod_p(n, p) == order
    assert python_kernels.count_symplectic_mod_p(n, p) == order


def test_pure_fallback_env():
    code = "import gsp_pullback._kernels as k; print(k.BACKEND)"
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env={"GSP_PULLBACK_PURE": "1", "PATH": ""}
    )
    assert out.stdout.strip() == "python"
