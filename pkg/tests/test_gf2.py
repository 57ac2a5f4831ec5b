"""Bitmask linear algebra over Z/2 against brute-force enumeration."""

import itertools

import numpy as np
import pytest

from gssc import UnsupportedError
from gssc.gf2 import (check_enumeration_bound, column_masks, gray_iter,
                      independent_columns, mask_norm_p, mask_norm_power,
                      mask_to_vector, vector_to_mask)


def test_mask_vector_round_trip():
    rng = np.random.default_rng(0)
    for _ in range(20):
        n = int(rng.integers(1, 12))
        values = rng.integers(0, 2, size=n)
        mask = vector_to_mask(values)
        back = mask_to_vector(mask, n)
        assert [int(v) for v in back] == [int(v) for v in values]
    # reduction mod 2 happens on the way in
    assert vector_to_mask([2, 3, -1]) == 0b110


def test_column_masks_reduce_mod_2():
    mat = np.array([[1, 2], [-3, 4], [0, 5]], dtype=object)
    masks = column_masks(mat)
    assert masks == [0b011, 0b100]


def test_gray_iter_visits_every_subset_once():
    rng = np.random.default_rng(1)
    payloads = [(int(rng.integers(0, 256)), int(rng.integers(0, 256)))
                for _ in range(5)]
    seen = {}
    for subset, combo in gray_iter(payloads, width=2):
        assert subset not in seen
        seen[subset] = combo
    assert len(seen) == 32
    for bits in itertools.product((0, 1), repeat=5):
        subset = sum(b << i for i, b in enumerate(bits))
        want0 = 0
        want1 = 0
        for i, b in enumerate(bits):
            if b:
                want0 ^= payloads[i][0]
                want1 ^= payloads[i][1]
        assert seen[subset] == (want0, want1)


def test_gray_iter_with_no_generators():
    assert list(gray_iter([], width=2)) == [(0, (0, 0))]
    assert list(gray_iter([], width=1)) == [(0, (0,))]


def test_independent_columns_span_everything():
    rng = np.random.default_rng(2)
    for _ in range(20):
        n_rows = int(rng.integers(1, 9))
        n_cols = int(rng.integers(1, 9))
        masks = [vector_to_mask(rng.integers(0, 2, size=n_rows))
                 for _ in range(n_cols)]
        kept = independent_columns(masks)
        span = {0}
        for idx in kept:
            span |= {s ^ masks[idx] for s in span}
        # kept columns are independent: the span has full size
        assert len(span) == 1 << len(kept)
        # and they generate every original column
        assert all(m in span for m in masks)


def test_norms_match_naive_counting():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.integers(1, 10))
        values = rng.integers(0, 2, size=n)
        mask = vector_to_mask(values)
        w = rng.uniform(0.5, 2.0, size=n)
        count = int(np.sum(values))
        assert mask_norm_p(mask, 1) == float(count)
        assert mask_norm_p(mask, 2) == pytest.approx(np.sqrt(count))
        assert mask_norm_power(mask, 2) == count
        assert isinstance(mask_norm_power(mask, 2), int)
        want1 = float(np.sum(w[values == 1]))
        assert mask_norm_p(mask, 1, w) == pytest.approx(want1)
        want2 = float(np.sum(w[values == 1] ** 2))
        assert mask_norm_power(mask, 2, w) == pytest.approx(want2)
        assert mask_norm_p(mask, 2, w) == pytest.approx(np.sqrt(want2))


def test_enumeration_bound():
    check_enumeration_bound(24, "test")
    with pytest.raises(UnsupportedError, match="2\\^25"):
        check_enumeration_bound(25, "test")
