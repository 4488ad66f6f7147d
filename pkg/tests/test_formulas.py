import math
import random

import pytest

from ecograph.errors import MissingField, OutOfBound
from ecograph.fixtures import MEXICO_CITY, SAO_PAULO, VALENCIA
from ecograph.formulas import (
    C10_HIGH,
    METRIC_COUNTS,
    FormulaId,
    FormulaInput,
    bounds,
    evaluate,
    evaluate_all,
    rescale_c10,
    result_to_json_dict,
)
from ecograph.metrics import MetricsBundle


def make_bundle(**overrides) -> MetricsBundle:
    base = dict(
        n_nodes=100,
        n_edges=300,
        avg_shortest_path=3.0,
        central_point_dominance=0.2,
        clustering=0.3,
        density=0.06,
        global_efficiency=0.4,
        avg_eccentricity=5.0,
        avg_degree=6.0,
        modularity=0.5,
        avg_edge_weight=1.0,
        transitivity=0.2,
        rich_club=0.3,
        core_ratio=0.6,
        avg_collaborations=12.0,
    )
    base.update(overrides)
    return MetricsBundle(**base)


def random_valid_bundle(rng: random.Random, m: int) -> MetricsBundle:
    return make_bundle(
        central_point_dominance=rng.uniform(0, 1),
        clustering=rng.uniform(0, 1),
        global_efficiency=rng.uniform(0, 1),
        avg_eccentricity=rng.uniform(1, 20),
        avg_shortest_path=rng.uniform(1, 20),
        modularity=rng.uniform(-0.5, 1),
        transitivity=rng.uniform(0, 1),
        rich_club=rng.uniform(0, 1),
        core_ratio=rng.uniform(0, 1),
        avg_collaborations=rng.uniform(0, m),
    )


class TestEvaluateExamples:
    def test_c0_valencia(self):
        fv = evaluate(FormulaId.C0, FormulaInput(bundle=VALENCIA, m=24))
        expected = 15.05 * (0.38 - math.log10(0.37**2))
        assert fv.value == pytest.approx(expected, abs=1e-9)
        assert fv.value == pytest.approx(18.716128, abs=1e-4)

    def test_c10_valencia(self):
        fv = evaluate(FormulaId.C10, FormulaInput(bundle=VALENCIA, m=24))
        assert fv.value == pytest.approx(0.441878, abs=1e-4)

    def test_c10_all_zero(self):
        bundle = make_bundle(
            global_efficiency=0.0, transitivity=0.0, avg_collaborations=0.0
        )
        fv = evaluate(FormulaId.C10, FormulaInput(bundle=bundle, m=24))
        assert fv.value == pytest.approx(0.0)

    def test_c3_cosine_maximum(self):
        bundle = make_bundle(modularity=0.0, global_efficiency=1.0, clustering=1.0)
        fv = evaluate(FormulaId.C3, FormulaInput(bundle=bundle, m=24))
        assert fv.value == pytest.approx(1.0)

    def test_avg_exceeding_m_warns(self):
        fv = evaluate(FormulaId.C10, FormulaInput(bundle=VALENCIA, m=11))
        assert any("exceeds m" in w for w in fv.warnings)


class TestRescale:
    def test_zero(self):
        assert rescale_c10(0.0) == pytest.approx(1.0)

    def test_upper(self):
        assert rescale_c10(C10_HIGH) == pytest.approx(1.0 + 10 * (math.log(2) + 1) / 2)
        assert rescale_c10(C10_HIGH) == pytest.approx(9.4657, abs=1e-3)

    def test_midscale_point(self):
        assert rescale_c10(0.63) == pytest.approx(7.3)

    def test_out_of_bound(self):
        with pytest.raises(OutOfBound):
            rescale_c10(-0.1)
        with pytest.raises(OutOfBound):
            rescale_c10(0.9)


class TestEvaluateAll:
    def test_valencia_full(self):
        results = evaluate_all(FormulaInput(bundle=VALENCIA, m=24))
        assert len(results) == 16
        assert results[FormulaId.C10].value == pytest.approx(0.441878, abs=1e-4)

    def test_modularity_zero_isolated(self):
        bundle = make_bundle(modularity=0.0)
        results = evaluate_all(FormulaInput(bundle=bundle, m=24))
        assert any("clamped" in w for w in results[FormulaId.C0].warnings)
        others = [fid for fid in FormulaId if fid is not FormulaId.C0]
        assert all(results[fid].error is None for fid in others)

    def test_missing_core_ratio_captured(self):
        results = evaluate_all(FormulaInput(bundle=VALENCIA, m=24))
        # fixtures ship without a core ratio; C1/C5/C11/C14 report it missing
        for fid in (FormulaId.C1, FormulaId.C5, FormulaId.C11, FormulaId.C14):
            assert results[fid].error is not None
            assert "core_ratio" in results[fid].error
        assert results[FormulaId.C10].error is None

    def test_city_ordering(self):
        for m in (16, 24, 34):
            vals = {
                name: evaluate(FormulaId.C10, FormulaInput(bundle=b, m=m)).value
                for name, b in (("v", VALENCIA), ("mx", MEXICO_CITY), ("sp", SAO_PAULO))
            }
            assert vals["v"] > vals["mx"] > vals["sp"]


class TestDelimitation:
    def test_thousand_random_bundles(self):
        rng = random.Random(77)
        for _ in range(1000):
            m = rng.choice([16, 24, 34])
            bundle = random_valid_bundle(rng, m)
            inp = FormulaInput(bundle=bundle, m=m)
            for fid in FormulaId:
                fv = evaluate(fid, inp)
                lo, hi = bounds(fid, m)
                assert lo - 1e-9 <= fv.value <= hi + 1e-9, (fid, fv.value, lo, hi)

    def test_c8_literal_third_subcomponent(self):
        # at modularity 1 the cosine term contributes -1/2, not 0
        assert 0.5 * math.cos(math.pi * 1.0) == pytest.approx(-0.5)
        zero = make_bundle(
            modularity=1.0, global_efficiency=0.0, transitivity=0.0,
            avg_collaborations=0.0,
        )
        fv = evaluate(FormulaId.C8, FormulaInput(bundle=zero, m=24))
        assert fv.value == pytest.approx(0.5 * (-0.5) / 3.0)
        assert fv.value == pytest.approx(bounds(FormulaId.C8, 24)[0])

    def test_determinism(self):
        bundle = make_bundle()
        inp = FormulaInput(bundle=bundle, m=24)
        for fid in FormulaId:
            assert evaluate(fid, inp).value == evaluate(fid, inp).value


class TestMonotonicity:
    INCREASING_IN_EFFICIENCY = (
        FormulaId.C1, FormulaId.C2, FormulaId.C5, FormulaId.C7, FormulaId.C8,
        FormulaId.C9, FormulaId.C10, FormulaId.C11, FormulaId.C12,
        FormulaId.C13, FormulaId.C14,
    )
    INCREASING_IN_AVG = (
        FormulaId.C7, FormulaId.C8, FormulaId.C9, FormulaId.C10,
        FormulaId.C11, FormulaId.C12, FormulaId.C13, FormulaId.C14,
    )

    def test_efficiency_monotone(self):
        lo = make_bundle(global_efficiency=0.3)
        hi = make_bundle(global_efficiency=0.6)
        for fid in self.INCREASING_IN_EFFICIENCY:
            a = evaluate(fid, FormulaInput(bundle=lo, m=24)).value
            b = evaluate(fid, FormulaInput(bundle=hi, m=24)).value
            assert b > a, fid

    def test_avg_monotone(self):
        lo = make_bundle(avg_collaborations=5.0)
        hi = make_bundle(avg_collaborations=15.0)
        for fid in self.INCREASING_IN_AVG:
            a = evaluate(fid, FormulaInput(bundle=lo, m=24)).value
            b = evaluate(fid, FormulaInput(bundle=hi, m=24)).value
            assert b > a, fid

    def test_c0_avg_monotone_when_positive(self):
        lo = make_bundle(avg_collaborations=5.0, clustering=0.5, modularity=0.5)
        hi = make_bundle(avg_collaborations=15.0, clustering=0.5, modularity=0.5)
        a = evaluate(FormulaId.C0, FormulaInput(bundle=lo, m=24)).value
        b = evaluate(FormulaId.C0, FormulaInput(bundle=hi, m=24)).value
        assert b > a


class TestMeta:
    def test_sixteen_ids(self):
        assert len(FormulaId) == 16
        assert len(METRIC_COUNTS) == 16
        assert METRIC_COUNTS[FormulaId.C14] == 7

    def test_from_string(self):
        assert FormulaId.from_string("c10") is FormulaId.C10
        assert FormulaId.from_string("C10R") is FormulaId.C10R
        with pytest.raises(ValueError):
            FormulaId.from_string("C99")

    def test_json_wire_form(self):
        fv = evaluate(FormulaId.C10, FormulaInput(bundle=VALENCIA, m=24))
        wire = result_to_json_dict(FormulaId.C10, fv)
        assert wire["formula"] == "C10"
        assert wire["rescaled"] == pytest.approx(1 + 10 * fv.value)
        assert isinstance(wire["warnings"], list)

    def test_missing_field_direct_raise(self):
        with pytest.raises(MissingField):
            evaluate(FormulaId.C5, FormulaInput(bundle=VALENCIA, m=24))
