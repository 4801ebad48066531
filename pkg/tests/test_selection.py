from __future__ import annotations

import numpy as np
import pytest

from framesieve.errors import BadParameterError, EmptyInputError
from framesieve.scoring import ScoreBreakdown
from framesieve.selection import select_threshold, select_top_k


def scored(values: list[float], indices: list[int] | None = None) -> list[ScoreBreakdown]:
    indices = indices if indices is not None else list(range(len(values)))
    return [
        ScoreBreakdown(
            frame_index=idx,
            s_sem_raw=v,
            s_temp_raw=v,
            s_drop_raw=v,
            s_sem=v,
            s_temp=v,
            s_drop=v,
            combined=v,
        )
        for idx, v in zip(indices, values)
    ]


class TestTopK:
    def test_keeps_k_best(self):
        result = select_top_k(scored([0.9, 0.1, 0.5]), 2)
        assert result.selected == [0, 2]

    def test_ties_break_to_smaller_index(self):
        result = select_top_k(scored([0.5, 0.5, 0.5]), 2)
        assert result.selected == [0, 1]

    def test_saturates_when_k_exceeds_candidates(self):
        result = select_top_k(scored([0.1, 0.2, 0.3]), 10)
        assert result.selected == [0, 1, 2]

    def test_full_k_returns_everything(self):
        values = [0.4, 0.9, 0.2, 0.6]
        assert select_top_k(scored(values), len(values)).selected == [0, 1, 2, 3]

    def test_k_below_one_rejected(self):
        with pytest.raises(BadParameterError):
            select_top_k(scored([0.5]), 0)

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            select_top_k([], 1)

    def test_bookkeeping(self):
        result = select_top_k(scored([0.3, 0.8], indices=[10, 20]), 1, video_id="v7")
        assert result.video_id == "v7"
        assert result.selected == [20]
        assert result.n_candidates == 2
        assert result.strategy == "top_k"


class TestThreshold:
    def test_absolute(self):
        result = select_threshold(scored([0.0, 0.5, 1.0]), "absolute", 0.6)
        assert result.selected == [2]

    def test_frac_max(self):
        result = select_threshold(scored([0.0, 0.5, 1.0]), "frac_max", 0.5)
        assert result.selected == [1, 2]

    def test_mean_std(self):
        values = [0.0, 0.2, 0.4, 1.0]
        result = select_threshold(scored(values), "mean_std", 1.0)
        cutoff = np.mean(values) + np.std(values)
        expected = [i for i, v in enumerate(values) if v >= cutoff]
        assert result.selected == expected

    def test_all_zero_scores_fall_back_to_single_argmax(self):
        for strategy, param in (("absolute", 0.5), ("frac_max", 0.8), ("mean_std", 0.0)):
            result = select_threshold(scored([0.0, 0.0, 0.0]), strategy, param)
            assert result.selected == [0], strategy

    def test_fallback_when_nothing_passes(self):
        result = select_threshold(scored([0.1, 0.9, 0.3]), "absolute", 0.95)
        assert result.selected == [1]

    def test_absolute_monotonicity(self):
        rng = np.random.default_rng(19)
        values = rng.random(12).tolist()
        taus = sorted(rng.random(6).tolist())
        previous = None
        for tau in taus:
            chosen = set(select_threshold(scored(values), "absolute", tau).selected)
            if previous is not None:
                assert chosen <= previous or len(chosen) == 1
            previous = chosen

    def test_bad_parameters(self):
        with pytest.raises(BadParameterError):
            select_threshold(scored([0.5]), "absolute", 1.5)
        with pytest.raises(BadParameterError):
            select_threshold(scored([0.5]), "frac_max", 0.0)
        with pytest.raises(BadParameterError):
            select_threshold(scored([0.5]), "nonsense", 0.5)

    def test_mean_std_allows_any_lambda(self):
        result = select_threshold(scored([0.2, 0.8]), "mean_std", -5.0)
        assert result.selected == [0, 1]

    def test_deterministic(self):
        values = np.random.default_rng(2).random(9).tolist()
        a = select_threshold(scored(values), "frac_max", 0.7)
        b = select_threshold(scored(values), "frac_max", 0.7)
        assert a.selected == b.selected

    def test_selected_sorted_by_frame_index(self):
        result = select_threshold(scored([1.0, 0.9, 0.95], indices=[30, 10, 20]), "frac_max", 0.85)
        assert result.selected == [10, 20, 30]
