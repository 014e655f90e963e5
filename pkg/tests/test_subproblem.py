import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_select
from ssarc import (LadderExhausted, ShiftLadder, ShiftSelection, ShiftSolveResult,
                   ShiftSolveSet, advance_on_failure, select_initial, solve_all_shifts)


def make_set(lambdas, norms, available=None):
    lambdas = np.asarray(lambdas, dtype=float)
    available = np.ones(len(lambdas), bool) if available is None else np.asarray(available)
    results = [ShiftSolveResult(i, lam, np.array([nrm]), 0.0, bool(ok), True, 1)
               for i, (lam, nrm, ok) in enumerate(zip(lambdas, norms, available))]
    return ShiftSolveSet(results, 1.0, 1, 1, lambdas)


def selection(beta_of, j=0):
    beta_of = np.asarray(beta_of, dtype=float)
    lams = np.arange(1.0, len(beta_of) + 1)
    return ShiftSelection(i_plus=0, j=j, beta_of=beta_of, lambdas=lams,
                          u_norms=beta_of * lams)


class TestSelectInitial:

    def test_crossing_picks_closer_side(self):
        lams = 10.0 ** np.arange(6)
        norms = np.array([500.0, 400.0, 300.0, 150.0, 90.0, 80.0])
        beta = 1e-2
        gaps = np.abs(beta * lams - norms)
        # beta * lam crosses ||u|| between 3 and 4, closer at 4
        assert beta * lams[3] < norms[3] and beta * lams[4] > norms[4]
        assert gaps[4] < gaps[3]
        sel = select_initial(make_set(lams, norms), beta)
        assert sel.j == 4 and sel.i_plus == 0
        assert (sel.i_plus, sel.j) == brute_force_select(lams, norms, [True] * 6, beta)

    def test_single_usable_shift(self):
        sel = select_initial(make_set([1, 2, 4, 8], [5, 4, 3, 2], [False] * 3 + [True]), 1.0)
        assert sel.i_plus == sel.j == 3

    def test_exact_secular_match(self):
        lams = np.array([0.1, 0.3, 1.0, 3.0])
        norms = np.array([2.0, 1.5, 2.0, 0.5])
        sel = select_initial(make_set(lams, norms), 2.0)
        assert sel.j == 2
        assert 2.0 * lams[sel.j] - norms[sel.j] == 0.0

    def test_tie_goes_to_smaller_index(self):
        # gaps |lam - ||u||| are 1, 1, 3
        sel = select_initial(make_set([1.0, 2.0, 3.0], [2.0, 1.0, 0.0]), 1.0)
        assert sel.j == 0

    def test_gap_in_curvature_moves_i_plus(self):
        # an unusable shift in the middle rules out everything below it
        sel = select_initial(make_set([1, 2, 3, 4], [4, 3, 2, 1], [True, False, True, True]),
                             1.0)
        assert sel.i_plus == 2
        assert np.isnan(sel.beta_of[:2]).all()

    def test_nothing_usable(self):
        with pytest.raises(LadderExhausted):
            select_initial(make_set([1, 2], [1, 1], [False, False]), 1.0)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(st.floats(1e-3, 1e3), st.booleans()), min_size=1, max_size=12),
           st.floats(1e-4, 1e4))
    def test_matches_brute_force(self, data, beta):
        norms = [d[0] for d in data]
        avail = [d[1] for d in data]
        avail[-1] = True
        lams = 10.0 ** np.linspace(-3, 3, len(norms))
        sel = select_initial(make_set(lams, norms, avail), beta)
        assert (sel.i_plus, sel.j) == brute_force_select(lams, norms, avail, beta)
        assert sel.i_plus <= sel.j <= sel.m
        assert all(avail[sel.i_plus:])

    def test_bracket_holds_on_real_solve(self, rng):
        ladder = ShiftLadder.geometric()
        A = rng.standard_normal((8, 8))
        B = A @ A.T
        g = rng.standard_normal(8)
        for beta in [1e-3, 1.0, 1e3]:
            sel = select_initial(solve_all_shifts(B, g, ladder), beta)
            t = ladder.psi
            lam = sel.lambdas[sel.j]
            beta_sel = sel.beta_of[sel.j]
            assert sel.u_norms[sel.j] / (t * beta_sel) <= lam * (1 + 1e-12)
            assert lam <= t * sel.u_norms[sel.j] / beta_sel * (1 + 1e-12)


class TestAdvanceOnFailure:

    def test_hand_walk(self):
        j, beta = advance_on_failure(selection([10, 3, 0.9, 0.2]), 10.0, 0.1)
        assert (j, beta) == (2, 0.9)

    def test_immediate_success(self):
        j, beta = advance_on_failure(selection([10, 0.5, 0.1]), 10.0, 0.1)
        assert (j, beta) == (1, 0.5)

    def test_exhaustion(self):
        with pytest.raises(LadderExhausted):
            advance_on_failure(selection([10, 8, 6, 4]), 10.0, 0.1)

    def test_at_top_of_ladder(self):
        with pytest.raises(LadderExhausted):
            advance_on_failure(selection([10, 1], j=1), 10.0, 0.1)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(1e-6, 1e6), min_size=2, max_size=15),
           st.floats(1e-3, 1e3), st.floats(0.01, 0.9))
    def test_progress_and_reduction(self, beta_of, beta_k, gamma1):
        sel = selection(beta_of)
        try:
            j, beta = advance_on_failure(sel, beta_k, gamma1)
        except LadderExhausted:
            assert all(b > gamma1 * beta_k for b in beta_of[1:])
            return
        assert j > sel.j
        assert beta <= gamma1 * beta_k
        assert all(b > gamma1 * beta_k for b in beta_of[1:j])
