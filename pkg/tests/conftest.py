import numpy as np
import pytest

from forest_skein.forests import A, B, caret
from forest_skein.groups import GroupElement
from forest_skein.skein import SkeinContext

SEED = 42


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(params=[3, 4, 5])
def ctx(request):
    return SkeinContext(request.param)


@pytest.fixture
def ctx3():
    return SkeinContext(3)


@pytest.fixture
def yb_ya(ctx3):
    """[Y_b / Y_a] in G_3."""
    return GroupElement.make(ctx3, caret(B), caret(A))
