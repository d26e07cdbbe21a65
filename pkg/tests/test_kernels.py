import os
import random
import subprocess
import sys

import pytest

from chowbench import _ddpy, kernels


def random_cone(rng, d, m):
    rows = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
    return rows + [tuple(rng.randint(-5, 5) for _ in range(d)) for _ in range(m - d)]


def canon(result):
    rays, masks = result
    return sorted(zip(map(tuple, rays), masks))


needs_ext = pytest.mark.skipif(kernels._ddcore is None, reason="compiled kernel not built")


@needs_ext
def test_backends_agree_on_random_cones():
    rng = random.Random(3)
    for _ in range(100):
        d = rng.randint(2, 6)
        rows = random_cone(rng, d, rng.randint(d, 3 * d))
        assert canon(kernels.extreme_rays(rows, d, backend="cython")) == \
            canon(kernels.extreme_rays(rows, d, backend="python"))


@needs_ext
def test_overflow_falls_back_to_python():
    big = 3 ** 39
    rows = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (big, -big + 1, 7), (-big, big, big - 1)]
    with pytest.raises(OverflowError):
        kernels._ddcore.extreme_rays(rows, 3)
    assert canon(kernels.extreme_rays(rows, 3)) == canon(_ddpy.extreme_rays(rows, 3))


def test_pure_env_selects_python():
    env = dict(os.environ, CHOWBENCH_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import chowbench; print(chowbench.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
