import json
import os
import subprocess
import sys

import pytest

from dgq import builders
from dgq._kernels import _numpy
from dgq.double import validate

PROBE = r"""
import json
from dgq import builders
from dgq._kernels import BACKEND
from dgq.double import validate
print(json.dumps({"backend": BACKEND, "report": validate(builders.no_siempre(2, 1)).to_dict()}))
"""


def _probe(disable: str) -> dict:
    env = dict(os.environ, DGQ_DISABLE_NUMBA=disable)
    out = subprocess.run([sys.executable, "-c", PROBE], env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def test_backends_agree():
    numba_run, numpy_run = _probe("0"), _probe("1")
    assert numpy_run["backend"] == "numpy"
    assert numba_run["report"] == numpy_run["report"]


def test_numpy_associativity_finds_broken_entry():
    T = builders.no_siempre(1, 1)
    assert _numpy.associativity(T.hcomp, 10)[1] == 0
    bad = T.hcomp.copy()
    i, j = map(int, next(iter(zip(*(bad >= 0).nonzero()))))
    bad[i, j] = (bad[i, j] + 1) % T.n
    witnesses, count = _numpy.associativity(bad, 10)
    assert count > 0 and len(witnesses) > 0


@pytest.mark.parametrize("m,n", [(1, 1), (2, 2)])
def test_numpy_backend_validates(m, n):
    assert validate(builders.no_siempre(m, n)).ok
