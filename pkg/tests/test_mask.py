# -*- coding: utf-8 -*-
import random

import pytest

from src.core.exceptions import DomainError
from src.core.mask import Mask, flip_element, mask_from_index, mask_to_index


def test_mask_from_index_zero_is_all_off():
    assert mask_from_index(0, 16).bits == (0,) * 16


def test_mask_from_index_full_range_is_all_on():
    assert mask_from_index(65535, 16).bits == (1,) * 16


def test_mask_from_index_binary_expansion():
    assert mask_from_index(5, 3).bits == (1, 0, 1)


def test_mask_from_index_out_of_range_names_bound():
    with pytest.raises(DomainError, match="65536"):
        mask_from_index(65536, 16)
    with pytest.raises(DomainError):
        mask_from_index(-1, 4)


@pytest.mark.parametrize("n", range(1, 13))
def test_index_round_trip_exhaustive(n):
    for index in range(1 << n):
        assert mask_to_index(mask_from_index(index, n)) == index


def test_index_round_trip_sampled_large():
    rng = random.Random(7)
    for n in range(13, 21):
        for _ in range(200):
            index = rng.randrange(1 << n)
            assert mask_from_index(index, n).index == index


def test_element_count_bounds():
    with pytest.raises(DomainError):
        mask_from_index(0, 33)
    assert Mask.all_on(32).index == (1 << 32) - 1
    assert mask_from_index(0, 0).n == 0


def test_flip_element_examples():
    assert flip_element(Mask((0, 0)), 0).bits == (1, 0)
    assert flip_element(Mask((1, 1)), 1).bits == (1, 0)


def test_flip_element_is_involution_and_leaves_input():
    rng = random.Random(11)
    for _ in range(50):
        m = mask_from_index(rng.randrange(1 << 10), 10)
        flipped = flip_element(m, 3)
        assert sum(a != b for a, b in zip(m.bits, flipped.bits)) == 1
        assert flip_element(flipped, 3) == m


def test_flip_element_out_of_range():
    with pytest.raises(DomainError):
        flip_element(Mask((0, 1)), 2)


def test_masks_are_value_comparable_and_hashable():
    assert Mask((1, 0, 1)) == mask_from_index(5, 3)
    assert len({Mask((1, 0)), mask_from_index(1, 2)}) == 1


def test_invalid_bits_rejected():
    with pytest.raises(DomainError):
        Mask((0, 2))


def test_str_shows_most_significant_element_first():
    assert str(mask_from_index(1, 4)) == "0001"
