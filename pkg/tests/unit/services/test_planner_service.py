import random

import pytest
from hypothesis import given, settings, strategies as st

from app.exceptions import NotFeasible
from app.schema.census_schema import Census
from app.schema.plan_schema import BaseTemplate, StepKind, SurgeryStep
from app.services.census_service import check_feasibility, total_faces
from app.services.oracle_service import random_feasible_census
from app.services.planner_service import (
    explain,
    plan_reduction,
    reduction_measure,
    replay,
    step_delta,
)


class TestStepDelta:

    def test_f1a_four(self):
        assert step_delta(SurgeryStep.f1a(4)) == {1: 2, 2: -1, 4: 1}

    def test_f1a_three(self):
        assert step_delta(SurgeryStep.f1a(3)) == {1: 1, 3: 1}

    def test_f1b(self):
        assert step_delta(SurgeryStep.f1b()) == {2: 2}

    @pytest.mark.parametrize("m", range(3, 12))
    def test_f1a_adds_two_faces_and_keeps_euler_sum(self, m):
        delta = step_delta(SurgeryStep.f1a(m))
        assert sum(delta.values()) == 2
        assert sum((2 - k) * d for k, d in delta.items()) == 0


class TestPlanReduction:

    def test_circles_base(self):
        plan = plan_reduction(Census.of({1: 2, 2: 1}))
        assert plan.base == BaseTemplate.circles()
        assert plan.steps == ()

    def test_discs_base(self):
        plan = plan_reduction(Census.of({1: 8}))
        assert plan.base == BaseTemplate.discs(1)
        assert plan.steps == ()

    def test_annulus_with_two_f1a(self):
        plan = plan_reduction(Census.of({1: 11, 3: 1, 4: 1}))
        assert plan.base == BaseTemplate.annulus(1)
        assert plan.steps == (SurgeryStep.f1a(3), SurgeryStep.f1a(4))
        assert [c.to_text() for c in plan.trace] == ["8,1", "9,1,1", "11,0,1,1"]

    def test_circles_with_two_f1a_three(self):
        plan = plan_reduction(Census.of({1: 4, 2: 1, 3: 2}))
        assert plan.base == BaseTemplate.circles()
        assert plan.steps == (SurgeryStep.f1a(3), SurgeryStep.f1a(3))
        assert [c.to_text() for c in plan.trace] == ["2,1", "3,1,1", "4,1,2"]

    def test_even_annuli_reduce_to_discs(self):
        plan = plan_reduction(Census.of({1: 8, 2: 4}))
        assert plan.base == BaseTemplate.discs(1)
        assert [s.kind for s in plan.steps] == [StepKind.F1B, StepKind.F1B]

    @pytest.mark.parametrize("counts,reason", [({1: 2}, "P"), ({1: 3}, "E"), ({}, "E")])
    def test_infeasible(self, counts, reason):
        with pytest.raises(NotFeasible) as exc_info:
            plan_reduction(Census.of(counts))
        assert exc_info.value.reason == reason

    def test_explain(self):
        lines = explain(plan_reduction(Census.of({1: 11, 3: 1, 4: 1})))
        assert lines == [
            "base Annulus{1}: 8,1",
            "8,1 --F1a{3}--> 9,1,1",
            "9,1,1 --F1a{4}--> 11,0,1,1",
        ]


class TestPlanProperties:

    def _check_plan(self, census: Census):
        plan = plan_reduction(census)
        n = check_feasibility(census).n

        assert plan.target == census
        assert replay(plan) == list(plan.trace)
        assert len(plan.steps) <= reduction_measure(census)

        for before, step, after in zip(plan.trace, plan.steps, plan.trace[1:]):
            assert check_feasibility(before).n == n
            assert before.get(1) >= 2
            if step.kind == StepKind.F1A:
                assert before.get(step.m - 2) >= 1
            else:
                assert before.get(1) >= 1
            assert reduction_measure(before) < reduction_measure(after)
        return plan

    @given(st.integers(0, 2**32))
    @settings(max_examples=200, deadline=None)
    def test_random_plans(self, seed):
        census = random_feasible_census(random.Random(seed), 60)
        self._check_plan(census)

    def test_plan_corpus(self):
        rng = random.Random(20240613)
        for _ in range(1000):
            census = random_feasible_census(rng, 200)
            plan = self._check_plan(census)
            assert total_faces(plan.trace[0]) <= total_faces(census)
