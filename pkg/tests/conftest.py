import numpy as np
import pytest

from sweeprecon import _core
from sweeprecon.raster import BinaryMask
from sweeprecon.synth import Style, render_scene, standard_shapes


@pytest.fixture(params=sorted(_core.BACKENDS))
def backend(request):
    """Every available kernel backend (cython and/or python)."""
    return _core.BACKENDS[request.param]


@pytest.fixture(scope="session")
def fixtures():
    return {t.shape: t for t in standard_shapes()}


@pytest.fixture(scope="session")
def renders(fixtures):
    return {name: render_scene(t) for name, t in fixtures.items()}


def rect_mask(width=128, height=128, rows=(10, 100), cols=(20, 80)):
    bits = np.zeros((height, width), dtype=bool)
    bits[rows[0]:rows[1] + 1, cols[0]:cols[1] + 1] = True
    return BinaryMask.from_array(bits)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
