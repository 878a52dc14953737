import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from meshknit import enumerate_configurations, knit_and_knot, make_tree
from meshknit.ztquiver import equioriented_section


@pytest.fixture(scope="session")
def configs_cache():
    """Enumerations shared across modules; keyed (name, method)."""
    cache = {}

    def get(name: str, method: str = "patterns"):
        key = (name, method)
        if key not in cache:
            tree = make_tree(name[0], int(name[1:]))
            cache[key] = enumerate_configurations(tree, method)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def fig4():
    """The worked A7 example: tree, section, dimension vector, configuration."""
    tree = make_tree("A", 7)
    section = equioriented_section(tree)
    dims = (1, 4, 3, 2, 4, 3, 4)
    config = knit_and_knot(tree, section, dims)
    return tree, section, dims, config
