import random
import time
from collections import Counter
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from app.exceptions import InternalInvariantViolation, InvalidParameter, NoHostFace, NotFeasible
from app.model.certificate_model import SIDE_INNER, SIDE_OUTER, FreeCircle
from app.schema.census_schema import Census
from app.schema.plan_schema import BaseTemplate, SurgeryStep
from app.services import surgery_service
from app.services.census_service import census_difference, check_feasibility
from app.services.complex_service import LocalFace, global_faces, verify
from app.services.export_service import dump_certificate, load_certificate
from app.services.oracle_service import random_certificate, random_feasible_census
from app.services.planner_service import step_delta
from app.services.surgery_service import (
    DissectionBuilder,
    apply_f1a,
    apply_f1b,
    doubled_cycle,
    instantiate_base,
    realize,
)


def _apply(cert, step):
    builder = DissectionBuilder(cert)
    builder.apply(step)
    return builder.build()


def _first_host(cert, k):
    for face in global_faces(cert):
        if face.k == k:
            return face.members[0]
    return None


class TestBaseTemplates:

    def test_doubled_cycle_counts(self):
        comb_map = doubled_cycle(6)
        assert comb_map.vertex_count == 6
        assert comb_map.edge_count == 12

    @pytest.mark.parametrize("length", [0, 1])
    def test_doubled_cycle_too_short(self, length):
        with pytest.raises(InvalidParameter):
            doubled_cycle(length)

    def test_circles(self, circles_certificate):
        report = verify(circles_certificate)
        assert report.census == Census.of({1: 2, 2: 1})
        assert report.n == 0

    def test_discs_one(self, discs_certificate):
        report = verify(discs_certificate)
        assert report.census == Census.of({1: 8})
        assert discs_certificate.vertex_count == 6
        assert discs_certificate.edge_count == 12

    def test_annulus_two(self):
        cert = instantiate_base(BaseTemplate.annulus(2))
        report = verify(cert)
        assert report.census == Census.of({1: 14, 2: 1})
        assert cert.vertex_count == 12

    @pytest.mark.parametrize("template", [
        BaseTemplate.discs(0),
        BaseTemplate.annulus(0),
        BaseTemplate(kind="Circles", n=1),
    ])
    def test_invalid_templates(self, template):
        with pytest.raises(InvalidParameter):
            instantiate_base(template)

    def test_inductive_family(self):
        for n in range(1, 51):
            for template in (BaseTemplate.discs(n), BaseTemplate.annulus(n)):
                cert = instantiate_base(template)
                report = verify(cert)
                assert report.ok
                assert report.census == template.census()
                assert cert.vertex_count == 6 * n
                assert cert.edge_count == 12 * n


class TestSurgeries:

    def test_f1a_three_on_circles(self, circles_certificate):
        cert = apply_f1a(circles_certificate, 3)
        assert verify(cert).census == Census.of({1: 3, 2: 1, 3: 1})
        assert cert.circle_count == 4

    def test_f1a_four_needs_annulus(self, discs_certificate):
        with pytest.raises(NoHostFace):
            apply_f1a(discs_certificate, 4)

    def test_f1a_four_on_annulus(self, annulus_certificate):
        cert = apply_f1a(annulus_certificate, 4)
        assert verify(cert).census == Census.of({1: 10, 4: 1})

    def test_f1a_m_too_small(self, circles_certificate):
        with pytest.raises(InvalidParameter):
            apply_f1a(circles_certificate, 2)

    def test_f1a_circles_share_parent_face(self, annulus_certificate):
        cert = apply_f1a(annulus_certificate, 4)
        first, second = cert.attachments[-2:]
        assert (first.parent, first.parent_face) == (second.parent, second.parent_face)
        assert isinstance(cert.components[first.child], FreeCircle)

    def test_f1b_on_circles(self, circles_certificate):
        assert verify(apply_f1b(circles_certificate)).census == Census.of({1: 2, 2: 3})

    def test_f1b_on_discs(self, discs_certificate):
        assert verify(apply_f1b(discs_certificate)).census == Census.of({1: 8, 2: 2})

    def test_f1b_twice(self, discs_certificate):
        cert = apply_f1b(apply_f1b(discs_certificate))
        assert verify(cert).census == Census.of({1: 8, 2: 4})

    def test_surgery_keeps_input_unchanged(self, circles_certificate):
        apply_f1b(circles_certificate)
        assert len(circles_certificate.components) == 2


class TestDissectionBuilder:

    def test_host_faces(self, annulus_certificate):
        builder = DissectionBuilder(annulus_certificate)
        assert builder.find_host(2) == LocalFace(0, 0)
        assert builder.find_host(1) == LocalFace(0, 1)

    def test_no_host_face(self, discs_certificate):
        with pytest.raises(NoHostFace) as exc_info:
            DissectionBuilder(discs_certificate).find_host(2)
        assert exc_info.value.k == 2

    def test_host_follows_growth(self, circles_certificate):
        builder = DissectionBuilder(circles_certificate)
        builder.f1b()
        # Le disque (0, side0) est devenu un anneau
        assert builder.find_host(1) == LocalFace(1, SIDE_INNER)
        assert builder.find_host(2) == LocalFace(0, SIDE_OUTER)
        assert builder.census() == Census.of({1: 2, 2: 3})

    def test_builder_does_not_touch_input(self, annulus_certificate):
        builder = DissectionBuilder(annulus_certificate)
        builder.f1a(4)
        assert len(annulus_certificate.components) == 2
        assert len(builder.build().components) == 4

    def test_index_matches_full_merge(self):
        rng = random.Random(3)
        for seed in range(60):
            builder = DissectionBuilder(random_certificate(seed, max_faces=16))
            for _ in range(6):
                census = builder.census()
                options = [SurgeryStep.f1b()] if census.get(1) else []
                options += [SurgeryStep.f1a(k + 2) for k, _ in census.entries]
                builder.apply(rng.choice(options))

                cert = builder.build()
                assert builder.census() == verify(cert).census
                for k in range(1, builder.census().max_index + 1):
                    expected = _first_host(cert, k)
                    if expected is None:
                        with pytest.raises(NoHostFace):
                            builder.find_host(k)
                    else:
                        assert builder.find_host(k) == expected


class TestSurgeryDeltaConformance:

    def _check_delta(self, cert, step):
        before = verify(cert)
        after_cert = _apply(cert, step)
        after = verify(after_cert)
        assert after.ok
        assert census_difference(after.census, before.census) == step_delta(step)
        assert after_cert.vertex_count == cert.vertex_count

    def test_f1b_on_random_hosts(self):
        for seed in range(200):
            self._check_delta(random_certificate(seed), SurgeryStep.f1b())

    def test_f1a_on_random_hosts(self):
        rng = random.Random(7)
        for seed in range(200):
            cert = random_certificate(seed)
            k, _ = rng.choice(verify(cert).census.entries)
            self._check_delta(cert, SurgeryStep.f1a(k + 2))


class TestRealize:

    def test_circles(self):
        cert = realize(Census.of({1: 2, 2: 1}))
        assert cert == instantiate_base(BaseTemplate.circles())

    @pytest.mark.parametrize("counts", [{1: 8}, {1: 8, 2: 1}])
    def test_one_pair_of_triple_points(self, counts):
        cert = realize(Census.of(counts))
        assert cert.vertex_count == 6
        assert cert.edge_count == 12
        assert verify(cert).n == 1

    def test_mixed_census(self):
        census = Census.of({1: 11, 3: 1, 4: 1})
        cert = realize(census)
        assert cert.vertex_count == 6
        assert cert.circle_count == 4
        assert verify(cert).census == census

    @pytest.mark.parametrize("counts,reason", [({1: 2}, "P"), ({1: 3}, "E")])
    def test_infeasible(self, counts, reason):
        with pytest.raises(NotFeasible) as exc_info:
            realize(Census.of(counts))
        assert exc_info.value.reason == reason

    def test_broken_surgery_is_reported(self, monkeypatch):
        monkeypatch.setattr(surgery_service.DissectionBuilder, "f1b", lambda self: None)
        with pytest.raises(InternalInvariantViolation):
            realize(Census.of({1: 2, 2: 3}), check_each_step=True)

    def test_broken_surgery_caught_by_final_verify(self, monkeypatch):
        monkeypatch.setattr(surgery_service.DissectionBuilder, "f1b", lambda self: None)
        with pytest.raises(InternalInvariantViolation):
            realize(Census.of({1: 2, 2: 3}), check_each_step=False)

    def test_deterministic(self):
        census = Census.of({1: 20, 2: 3, 3: 2, 5: 1})
        assert dump_certificate(realize(census)) == dump_certificate(realize(census))

    @pytest.mark.parametrize("counts", [{1: 2, 2: 1999}, {1: 400, 400: 1}, {1: 1000, 2: 500, 3: 100, 7: 50}])
    def test_large_censuses(self, counts):
        census = Census.of(counts)
        cert = realize(census, check_each_step=True)
        assert verify(cert).census == census

    @pytest.mark.slow
    def test_default_face_limit_is_reachable(self):
        census = Census.of({1: 2, 2: 9997})
        started = time.perf_counter()
        cert = realize(census, check_each_step=True)
        elapsed = time.perf_counter() - started

        assert verify(cert).census == census
        assert elapsed < 60

    @given(st.integers(0, 2**32))
    @settings(max_examples=50, deadline=None)
    def test_random_censuses_with_step_checks(self, seed):
        census = random_feasible_census(random.Random(seed), 40)
        assert verify(realize(census, check_each_step=True)).census == census

    @pytest.mark.slow
    def test_round_trip_corpus(self):
        rng = random.Random(1998)
        for _ in range(1000):
            census = random_feasible_census(rng, 200)
            cert = load_certificate(dump_certificate(realize(census, check_each_step=False)))
            report = verify(cert)
            assert report.ok
            assert report.census.to_text() == census.to_text()
            assert report.n == check_feasibility(census).n

    @pytest.mark.slow
    def test_exhaustive_negative_gate(self):
        """Tous les recensements d'au plus 9 pièces, k <= 5: réalisés exactement si réalisables."""
        for faces in range(10):
            for combo in combinations_with_replacement(range(1, 6), faces):
                census = Census.of(Counter(combo))
                if check_feasibility(census).feasible:
                    assert verify(realize(census)).census == census
                else:
                    with pytest.raises(NotFeasible):
                        realize(census)
