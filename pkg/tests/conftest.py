import json

import pytest

from selfsim.complexes import SelfSimilarityComplex
from selfsim.groups import BUILTIN_NAMES, builtin_action
from selfsim.params import derive_params


@pytest.fixture(scope="session")
def complexes():
    """One complex per builtin, shared across the whole run."""
    return {name: SelfSimilarityComplex(builtin_action(name))
            for name in BUILTIN_NAMES}


@pytest.fixture(scope="session")
def all_params(complexes):
    # derive_params is the expensive part (Basilica's deep magic level);
    # everything downstream reuses this one computation
    return {name: derive_params(cx) for name, cx in complexes.items()}


@pytest.fixture(scope="session")
def odometer(complexes):
    return complexes["odometer"]


@pytest.fixture(scope="session")
def grig(complexes):
    return complexes["grigorchuk"]


@pytest.fixture(scope="session")
def basilica(complexes):
    return complexes["basilica"]


@pytest.fixture(scope="session")
def noncontracting_file(tmp_path_factory):
    """A recursion whose restriction words grow without bound: c|1 = cc."""
    data = {
        "alphabet": 2,
        "generators": [
            {"name": "a", "perm": [1, 0], "restrictions": ["", "a"]},
            {"name": "c", "perm": [0, 1], "restrictions": ["a", "cc"]},
        ],
    }
    path = tmp_path_factory.mktemp("groups") / "runaway.json"
    path.write_text(json.dumps(data))
    return str(path)
