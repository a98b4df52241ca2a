import pytest

from zigzag.interner import Interner, set_interner


@pytest.fixture(autouse=True)
def fresh_interner():
    """Every test runs against its own interner."""
    itn = set_interner(Interner())
    yield itn
    set_interner(Interner())
