"""Emitted pictures must match the frozen fixtures byte for byte."""

import pytest

from fixture_diagrams import FIXTURES, golden_files


@pytest.mark.parametrize("name", sorted(golden_files()))
def test_golden(name):
    assert golden_files()[name] == (FIXTURES / name).read_bytes()
