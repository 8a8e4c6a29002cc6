from fractions import Fraction
from random import Random

import pytest

from allocore.coalition import Coalition
from allocore.errors import PreconditionError, UndefinedRatioError
from allocore.games import (
    Allocation,
    ExplicitGame,
    satisfies_last_monotone,
    subset_sums,
    to_profit_game,
)
from allocore.generators import (
    random_empty_core_game,
    random_explicit_game,
    random_graph,
    random_last_monotone_game,
)
from allocore.lp import LpProblem, LpStatus, verify_point
from allocore.mstgame import MstGame
from allocore.relaxations import (
    almost_core_optimum,
    almost_core_problem,
    brute_force_core_oracle,
    brute_force_nonneg_core_oracle,
    core_nonempty,
    core_optimum,
    cost_of_stability,
    extended_core_delta,
    full_report,
    gamma_approx,
    least_core_eps,
    min_stable_profit,
    mult_core_eps,
    separate_almost_core,
    separate_almost_core_nonneg,
    weak_core_eps,
)

from _oracles import almost_core_member, almost_core_nonneg_member


class TestAlmostCoreOptimum:
    def test_gap_instance_nonneg(self, gap5):
        value, x = almost_core_optimum(MstGame(gap5), require_nonneg=True)
        assert value == 5
        assert verify_point(almost_core_problem(MstGame(gap5)), [0, 0, 5]).feasible

    def test_subsidy_instance_unrestricted(self, subsidy5):
        value, x = almost_core_optimum(MstGame(subsidy5), require_nonneg=False)
        assert value == 5
        assert tuple(x) == (-5, 5, 5)

    def test_steiner_instance(self, steiner):
        value, x = almost_core_optimum(MstGame(steiner), require_nonneg=False)
        assert value == 2
        assert tuple(x) == (0, 1, 1)

    def test_single_agent_rejected(self):
        with pytest.raises(PreconditionError):
            almost_core_optimum(ExplicitGame(1, [0, 7]))


class TestCoreOptimum:
    def test_detour_instance_total(self, tight_quarter):
        sol = core_optimum(MstGame(tight_quarter), [1, 1, 1])
        assert sol.value == 1  # equals c(N): the core is nonempty

    def test_unbalanced_total(self, unbalanced3):
        sol = core_optimum(unbalanced3, [1, 1, 1])
        assert sol.value == Fraction(3, 2)

    def test_zero_objective(self, unbalanced3):
        assert core_optimum(unbalanced3, [0, 0, 0]).value == 0

    def test_unbounded_objective_reported(self, unbalanced3):
        assert core_optimum(unbalanced3, [-1, 0, 0]).status is LpStatus.UNBOUNDED


class TestCoreNonempty:
    def test_balanced_with_witness(self, tight_quarter):
        game = MstGame(tight_quarter)
        ok, x = core_nonempty(game)
        assert ok
        assert x.total() == game.grand_cost()
        sums = subset_sums(list(x))
        for bits in range(1, 1 << 3):
            assert sums[bits] <= game.cost_bits(bits)

    def test_unbalanced(self, unbalanced3):
        ok, x = core_nonempty(unbalanced3)
        assert not ok and x is None

    def test_single_agent(self):
        ok, x = core_nonempty(ExplicitGame(1, [0, 7]))
        assert ok and tuple(x) == (7,)

    def test_matches_almost_core_criterion(self):
        rng = Random(21)
        for _ in range(25):
            game = random_explicit_game(rng, rng.randint(2, 5))
            ok, _ = core_nonempty(game)
            value, _ = almost_core_optimum(game)
            assert ok == (value >= game.grand_cost())


class TestEpsilonRelaxations:
    def test_least_core_unbalanced(self, unbalanced3):
        eps, x = least_core_eps(unbalanced3)
        assert eps == Fraction(1, 3)
        assert tuple(x) == (Fraction(2, 3),) * 3

    def test_least_core_balanced_is_zero(self, tight_quarter, subsidy5):
        assert least_core_eps(MstGame(tight_quarter))[0] == 0
        assert least_core_eps(MstGame(subsidy5))[0] == 0

    def test_weak_unbalanced(self, unbalanced3):
        eps, x = weak_core_eps(unbalanced3)
        assert eps == Fraction(1, 6)

    def test_weak_below_strong(self, unbalanced3):
        assert weak_core_eps(unbalanced3)[0] <= least_core_eps(unbalanced3)[0]

    def test_witnesses_satisfy_their_relaxations(self):
        rng = Random(22)
        for _ in range(15):
            game = random_explicit_game(rng, rng.randint(2, 5))
            c_grand = game.grand_cost()
            eps_s, xs = least_core_eps(game)
            assert xs.total() == c_grand
            eps_w, xw = weak_core_eps(game)
            assert xw.total() == c_grand
            sums_s = subset_sums(list(xs))
            sums_w = subset_sums(list(xw))
            for bits in range(1, (1 << game.n) - 1):
                assert sums_s[bits] <= game.cost_bits(bits) + eps_s
                assert sums_w[bits] <= game.cost_bits(bits) + eps_w * bits.bit_count()


class TestMultiplicative:
    def test_unbalanced(self, unbalanced3):
        eps, x = mult_core_eps(unbalanced3)
        assert eps == Fraction(1, 3)
        assert x.total() == unbalanced3.grand_cost()
        sums = subset_sums(list(x))
        for bits in range(1, 7):
            assert sums[bits] <= (1 + eps) * unbalanced3.cost_bits(bits)

    def test_balanced_is_zero(self, tight_quarter):
        eps, _ = mult_core_eps(MstGame(tight_quarter))
        assert eps == 0

    def test_no_finite_scaling(self):
        game = ExplicitGame(2, [0, 0, 0, 5])
        assert mult_core_eps(game) is None


class TestGamma:
    def test_unbalanced(self, unbalanced3):
        gamma, _ = gamma_approx(unbalanced3)
        assert gamma == Fraction(3, 4)

    def test_balanced_reaches_one(self, tight_quarter):
        gamma, _ = gamma_approx(MstGame(tight_quarter))
        assert gamma == 1

    def test_zero_grand_cost_is_an_error(self, gap5):
        with pytest.raises(UndefinedRatioError):
            gamma_approx(MstGame(gap5))


class TestCostOfStability:
    def test_unbalanced(self, unbalanced3):
        assert cost_of_stability(unbalanced3) == Fraction(1, 2)

    def test_balanced(self, tight_quarter):
        assert cost_of_stability(MstGame(tight_quarter)) == 0

    def test_equals_n_times_weak_eps(self, unbalanced3):
        assert cost_of_stability(unbalanced3) == 3 * weak_core_eps(unbalanced3)[0]


class TestExtendedCore:
    def test_unbalanced_with_witness_audit(self, unbalanced3):
        delta, (x, t) = extended_core_delta(unbalanced3)
        assert delta == Fraction(1, 2)
        assert all(v >= 0 for v in t)
        assert x.total() == unbalanced3.grand_cost()
        # audit the witness against the raw program
        n = 3
        problem = LpProblem(2 * n, [0] * n + [-1] * n, [None] * n + [Fraction(0)] * n)
        for bits in range(1, (1 << n) - 1):
            row = [Fraction(int(bool(bits >> i & 1))) for i in range(n)]
            problem.add(row + [-v for v in row], "<=", unbalanced3.cost_bits(bits))
        problem.add([1] * n + [0] * n, "==", unbalanced3.grand_cost())
        assert verify_point(problem, list(x) + list(t)).feasible

    def test_balanced_needs_no_subsidy(self, tight_quarter):
        delta, (x, t) = extended_core_delta(MstGame(tight_quarter))
        assert delta == 0
        assert t.total() == 0


class TestFullReport:
    def test_unbalanced_exact_values(self, unbalanced3):
        r = full_report(unbalanced3)
        assert not r.core_nonempty
        assert r.ac_opt == Fraction(3, 2)
        assert r.eps_strong == Fraction(1, 3)
        assert r.eps_weak == Fraction(1, 6)
        assert r.eps_mult == Fraction(1, 3)
        assert r.gamma_approx == Fraction(3, 4)
        assert r.cost_of_stability == Fraction(1, 2)
        assert r.extended_core_delta == Fraction(1, 2)

    def test_balanced_gaps_vanish(self, tight_quarter):
        r = full_report(MstGame(tight_quarter))
        assert r.core_nonempty
        assert r.ac_opt == Fraction(17, 8)
        assert (r.eps_strong, r.eps_weak, r.eps_mult) == (0, 0, 0)
        assert r.gamma_approx == 1
        assert r.cost_of_stability == 0 == r.extended_core_delta

    def test_zero_grand_cost_game(self, gap5):
        r = full_report(MstGame(gap5))
        assert r.core_nonempty
        assert r.gamma_approx is None
        assert r.ac_opt_nonneg == 5

    def test_random_balanced_games(self):
        rng = Random(31)
        found = 0
        for _ in range(40):
            game = random_explicit_game(rng, rng.randint(2, 4))
            r = full_report(game)
            if r.core_nonempty:
                found += 1
                assert r.cost_of_stability == 0
                assert r.gamma_approx in (None, 1)
        assert found


class TestConditionThree:
    def test_value_bound_on_last_monotone_games(self):
        rng = Random(32)
        for _ in range(20):
            n = rng.randint(2, 5)
            game = random_last_monotone_game(rng, n)
            value, _ = almost_core_optimum(game)
            assert value <= (1 + Fraction(1, n - 1)) * game.grand_cost()

    def test_bound_tight_on_monotonized_steiner(self, steiner):
        game = MstGame(steiner, monotonized=True)
        value, x = almost_core_optimum(game)
        assert value == Fraction(3, 2) == (1 + Fraction(1, 2)) * game.grand_cost()
        assert tuple(x) == (Fraction(1, 2),) * 3

    def test_nonnegative_maximizer_when_balanced(self):
        # monotonized spanning-tree games are balanced and last-monotone;
        # there the maximizer cannot dip below zero
        rng = Random(33)
        for _ in range(15):
            g = random_graph(rng, rng.randint(2, 5), "uniform")
            game = MstGame(g, monotonized=True)
            assert satisfies_last_monotone(game).ok
            _, x = almost_core_optimum(game)
            assert all(v >= 0 for v in x)

    def test_negative_maximizer_possible_when_core_empty(self):
        # last-monotone alone does not force nonnegative maximizers: with an
        # empty core, agent 1's subsidy can relax two binding pair
        # constraints at once. Here the unique optimum is (-5, 5, 5).
        b = 5
        game = ExplicitGame(
            3, [0, b, b, 0, b, 0, 2 * b, 2 * b]
        )  # c({1,2}) = c({1,3}) = 0, c({2,3}) = c(N) = 2b
        assert satisfies_last_monotone(game).ok
        ok, _ = core_nonempty(game)
        assert not ok
        value, x = almost_core_optimum(game)
        assert value == b
        assert tuple(x) == (-b, b, b)

    def test_submodular_last_monotone_games_have_clean_optima(self, steiner):
        # balanced + submodular + last-monotone: optimum exists, maximizer >= 0
        from allocore.games import is_submodular

        game = MstGame(steiner, monotonized=True)
        assert is_submodular(game).ok
        value, x = almost_core_optimum(game)
        assert value == Fraction(3, 2)
        assert all(v >= 0 for v in x)


class TestProfitSide:
    def test_duality_on_random_games(self):
        rng = Random(34)
        for trial in range(20):
            game = random_explicit_game(rng, 7 + trial % 2 if trial < 4 else rng.randint(2, 5))
            ac_value, _ = almost_core_optimum(game)
            profit = to_profit_game(game)
            stable_min, xv = min_stable_profit(profit)
            singles = sum(game.singleton_costs())
            assert ac_value + stable_min == singles
            sums = subset_sums(list(xv))
            for bits in range(1, (1 << game.n) - 1):
                assert sums[bits] >= profit.cost_bits(bits)


class TestSeparation:
    def test_member_point(self, tight_quarter):
        game = MstGame(tight_quarter)
        oracle = brute_force_core_oracle(game)
        res = separate_almost_core([0, 1, 1], oracle, game.grand_cost())
        assert res.member

    def test_violated_point(self, tight_quarter):
        game = MstGame(tight_quarter)
        oracle = brute_force_core_oracle(game)
        res = separate_almost_core([1, 1, 0], oracle, game.grand_cost())
        assert not res.member
        assert res.coalition == Coalition.from_members([1, 2], 3)
        assert res.amount == 1

    def test_member_despite_total_above_grand_cost(self, gap5):
        game = MstGame(gap5)
        oracle = brute_force_core_oracle(game)
        res = separate_almost_core([0, 0, 5], oracle, game.grand_cost())
        assert res.member  # x(N) = 5 > 0 = c(N) is irrelevant here

    def test_single_agent_always_member(self):
        game = ExplicitGame(1, [0, 7])
        oracle = brute_force_core_oracle(game)
        assert separate_almost_core([100], oracle, game.grand_cost()).member

    def test_nonneg_member(self, steiner):
        game = MstGame(steiner, monotonized=True)
        oracle = brute_force_nonneg_core_oracle(game)
        res = separate_almost_core_nonneg([Fraction(1, 2)] * 3, oracle, game)
        assert res.member

    def test_nonneg_violated(self, steiner):
        game = MstGame(steiner, monotonized=True)
        oracle = brute_force_nonneg_core_oracle(game)
        res = separate_almost_core_nonneg([1, 1, 0], oracle, game)
        assert not res.member
        assert res.coalition == Coalition.from_members([1, 2], 3)

    def test_nonneg_bound_violation_short_circuits(self, steiner):
        game = MstGame(steiner, monotonized=True)

        def exploding_oracle(point):
            raise RuntimeError("the oracle must not be consulted")

        res = separate_almost_core_nonneg([1, -1, 0], exploding_oracle, game)
        assert res.verdict == "bound_violated"
        assert res.negative_agent == 2
        assert res.amount == 1

    def test_nonneg_requires_last_monotone(self, gap5):
        game = MstGame(gap5)
        oracle = brute_force_nonneg_core_oracle(game)
        with pytest.raises(PreconditionError):
            separate_almost_core_nonneg([0, 0, 0], oracle, game)

    def test_agreement_with_brute_force(self):
        rng = Random(35)
        for _ in range(120):
            n = rng.randint(2, 6)
            game = random_explicit_game(rng, n)
            point = [Fraction(rng.randint(-4, 12), rng.randint(1, 3)) for _ in range(n)]
            oracle = brute_force_core_oracle(game)
            res = separate_almost_core(point, oracle, game.grand_cost())
            assert res.member == almost_core_member(game, point)
            if not res.member:
                violated = sum(point[i - 1] for i in res.coalition.members())
                assert res.coalition.is_proper()
                assert violated - game.cost(res.coalition) == res.amount > 0

    def test_nonneg_agreement_with_brute_force(self):
        rng = Random(36)
        for _ in range(120):
            n = rng.randint(2, 6)
            game = random_last_monotone_game(rng, n)
            point = [Fraction(rng.randint(-2, 10), rng.randint(1, 3)) for _ in range(n)]
            oracle = brute_force_nonneg_core_oracle(game)
            res = separate_almost_core_nonneg(point, oracle, game)
            assert res.member == almost_core_nonneg_member(game, point)
