"""The numpy fallback must agree with the numba kernels."""
import json
import os
import subprocess
import sys

import pytest

SCRIPT = r"""
import json
import numpy as np
from polysemi import _accel, kernels
from polysemi.enumerate import semigroup_tables, nary_tables
from polysemi.construct import named_example
from polysemi.structure import classify

rng = np.random.default_rng(5)
out = {"backend": _accel.BACKEND, "numba": _accel.USE_NUMBA}
rand = [rng.integers(3, size=3 ** 4) for _ in range(30)]
out["assoc"] = [int(kernels.first_failing_position(t, 3, 4)) for t in rand]
out["brute"] = [list(map(int, kernels.brute_first_failure(t, 3, 4))) for t in rand]
out["qt"] = [int(kernels.qt_first_failure(t, np.arange(81), 3, 4)) for t in rand]
out["semigroups"] = [int(semigroup_tables(m).sum()) for m in (1, 2, 3)]
out["colmajor"] = int(semigroup_tables(3, "colmajor").sum())
out["naive"] = int(semigroup_tables(3, "naive").sum())
out["nary"] = int(nary_tables(2, 4).sum())
out["classify"] = classify(named_example("chain5-4ary")).to_text()
print(json.dumps(out))
"""


def run_backend(name):
    env = dict(os.environ, POLYSEMI_BACKEND=name)
    res = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def test_numpy_fallback_matches_numba():
    a, b = run_backend("numba"), run_backend("numpy")
    assert a.pop("backend") == "numba" and a.pop("numba") is True
    assert b.pop("backend") == "numpy" and b.pop("numba") is False
    assert a == b


def test_unknown_backend_is_rejected():
    env = dict(os.environ, POLYSEMI_BACKEND="fortran")
    res = subprocess.run([sys.executable, "-c", "import polysemi"], env=env, capture_output=True, text=True)
    assert res.returncode != 0 and "POLYSEMI_BACKEND" in res.stderr


@pytest.mark.parametrize("flag", ["1"])
def test_debug_mode_iterates_families_directly(flag):
    env = dict(os.environ, POLYSEMI_DEBUG=flag)
    code = ("from polysemi.battery import universe_battery;"
            "print(universe_battery(2, 4, 'all-nary-exhaustive')[0])")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "True"
