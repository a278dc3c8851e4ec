import pytest

from hiddenbasis.verification import _representative, run_suite
from hiddenbasis.oracle import cycle_type
from hiddenbasis.repr_theory import partitions


@pytest.mark.parametrize("n", range(1, 7))
def test_projector_level_passes(n):
    results = run_suite(n, "projector", seed=n)
    assert results and all(r.passed for r in results), [r for r in results if not r.passed]


@pytest.mark.parametrize("n", [7, 10, 12])
def test_character_level_passes(n):
    assert all(r.passed for r in run_suite(n, "character"))


def test_class_representatives():
    for n in range(1, 8):
        for rho in partitions(n):
            assert cycle_type(_representative(rho)) == rho


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_suite(3, "dense")
    with pytest.raises(ValueError):
        run_suite(7, "projector")
