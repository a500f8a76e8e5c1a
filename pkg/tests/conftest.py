import pytest

from golay_mceliece import golay, mceliece
from golay_mceliece.gf2 import Rng


@pytest.fixture(scope="session")
def codec():
    return golay.build_codec()


@pytest.fixture(scope="session")
def keys():
    """Twenty certified keypairs from a fixed master seed."""
    master = Rng(20190426)
    return [mceliece.keygen(master.spawn(i)) for i in range(20)]
