import numpy as np
import pytest

from state_io.files import save_state


@pytest.fixture
def rng():
    return np.random.default_rng(20241018)


@pytest.fixture
def state_file(tmp_path):
    def write(state, name="state.json"):
        path = tmp_path / name
        save_state(path, state)
        return str(path)

    return write
