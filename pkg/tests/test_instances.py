"""Generators and the instance file format."""

from fractions import Fraction

import pytest

from migsched import (
    InstanceFormatError,
    IntervalInstance,
    IntervalJob,
    Job,
    MinMsInstance,
    gen_graham_worst_case,
    gen_random_minms,
    gen_random_mintpt,
    parse_instance,
    serialize_instance,
)
from migsched.instances import load_instance


class TestGrahamFamily:
    def test_m2_multiset(self):
        inst = gen_graham_worst_case(2)
        assert [j.process_time for j in inst.jobs] == [2, 2, 2, 3, 3]
        assert inst.total_load() == 12

    def test_m3_multiset(self):
        inst = gen_graham_worst_case(3)
        assert [j.process_time for j in inst.jobs] == [3, 3, 3, 4, 4, 5, 5]
        assert inst.total_load() == 27

    def test_m10_shape(self):
        inst = gen_graham_worst_case(10)
        assert len(inst.jobs) == 21
        assert inst.total_load() == 300
        assert max(j.process_time for j in inst.jobs) == 19

    def test_family_totals(self):
        for m in range(2, 51):
            inst = gen_graham_worst_case(m)
            assert len(inst.jobs) == 2 * m + 1
            assert inst.total_load() == 3 * m * m

    def test_degenerate_m_rejected(self):
        with pytest.raises(ValueError):
            gen_graham_worst_case(1)


class TestRandomGenerators:
    def test_minms_determinism(self):
        a = gen_random_minms(5, 2, (1, 9), seed=7)
        b = gen_random_minms(5, 2, (1, 9), seed=7)
        assert a == b

    def test_minms_degenerate(self):
        inst = gen_random_minms(1, 1, (5, 5), seed=123)
        assert inst.jobs[0].process_time == 5

    def test_minms_empty_range_rejected(self):
        with pytest.raises(ValueError):
            gen_random_minms(3, 2, (9, 4), seed=0)
        with pytest.raises(ValueError):
            gen_random_minms(3, 2, (0, 4), seed=0)

    def test_mintpt_determinism(self):
        assert gen_random_mintpt(6, 10, 3, seed=11) == gen_random_mintpt(6, 10, 3, seed=11)

    def test_mintpt_single_job(self):
        inst = gen_random_mintpt(1, 8, 2, seed=3)
        (job,) = inst.jobs
        assert 0 <= job.start_slot < job.end_slot <= 8

    def test_mintpt_jobs_within_horizon(self):
        inst = gen_random_mintpt(40, 12, 2, seed=9)
        assert all(0 <= j.start_slot < j.end_slot <= 12 for j in inst.jobs)

    def test_different_seeds_differ(self):
        assert gen_random_minms(8, 3, (1, 50), seed=1) != gen_random_minms(8, 3, (1, 50), seed=2)


class TestFileFormat:
    def test_minms_round_trip(self):
        inst = MinMsInstance((Job(0, 3), Job(1, Fraction(7, 2))), 2)
        text = serialize_instance(inst)
        assert text == "minms 1\nmachines 2\njob 0 3\njob 1 7/2\n"
        assert parse_instance(text) == inst
        assert serialize_instance(parse_instance(text)) == text

    def test_mintpt_round_trip(self):
        inst = IntervalInstance((IntervalJob(0, 0, 3), IntervalJob(1, 2, 5)), 4)
        text = serialize_instance(inst)
        assert text == "mintpt 1\ncapacity 4\njob 0 0 3 1\njob 1 2 5 1\n"
        assert parse_instance(text) == inst

    def test_fixture_files_are_canonical(self, fixtures_dir):
        for name in ("graham_m2.inst", "graham_m10.inst", "intervals_g3.inst"):
            text = (fixtures_dir / name).read_text()
            assert serialize_instance(parse_instance(text)) == text

    def test_interval_fixture_contents(self, fixtures_dir):
        inst = load_instance(fixtures_dir / "intervals_g3.inst")
        assert isinstance(inst, IntervalInstance)
        assert inst.capacity == 3
        assert [j.interval for j in inst.jobs] == [(0, 3), (0, 2), (1, 3), (0, 3)]

    def test_graham_fixture_matches_generator(self, fixtures_dir):
        assert load_instance(fixtures_dir / "graham_m10.inst") == gen_graham_worst_case(10)

    def test_comments_and_blank_lines_accepted(self):
        text = "# demo\n\nminms 1\nmachines 1\n# jobs\njob 0 4\n"
        inst = parse_instance(text)
        assert inst.jobs[0].process_time == 4

    def test_rational_parsing_is_exact(self):
        inst = parse_instance("minms 1\nmachines 1\njob 0 1/3\n")
        assert inst.jobs[0].process_time == Fraction(1, 3)

    def test_generator_output_round_trips(self):
        for inst in (gen_random_minms(6, 2, (1, 30), seed=4), gen_random_mintpt(6, 9, 2, seed=4)):
            assert parse_instance(serialize_instance(inst)) == inst


class TestParseErrors:
    def test_end_before_start_reports_line(self):
        with pytest.raises(InstanceFormatError) as err:
            parse_instance("mintpt 1\ncapacity 2\njob 0 3 1 1\n")
        assert err.value.line == 3
        assert "end slot" in str(err.value)

    def test_float_process_time_rejected(self):
        with pytest.raises(InstanceFormatError, match="num/den"):
            parse_instance("minms 1\nmachines 1\njob 0 1.5\n")

    def test_zero_process_time_rejected(self):
        with pytest.raises(InstanceFormatError, match="positive"):
            parse_instance("minms 1\nmachines 1\njob 0 0\n")

    def test_bad_header(self):
        with pytest.raises(InstanceFormatError):
            parse_instance("widgets 1\nmachines 1\njob 0 1\n")

    def test_bad_version(self):
        with pytest.raises(InstanceFormatError, match="version"):
            parse_instance("minms 9\nmachines 1\njob 0 1\n")

    def test_empty_document(self):
        with pytest.raises(InstanceFormatError):
            parse_instance("\n\n")

    def test_duplicate_job_ids_report_line(self):
        with pytest.raises(InstanceFormatError) as err:
            parse_instance("minms 1\nmachines 1\njob 0 1\njob 0 2\n")
        assert err.value.line == 4

    def test_malformed_job_line(self):
        with pytest.raises(InstanceFormatError, match="job"):
            parse_instance("minms 1\nmachines 1\njob zero 1\n")

    def test_zero_denominator(self):
        with pytest.raises(InstanceFormatError, match="denominator"):
            parse_instance("minms 1\nmachines 1\njob 0 3/0\n")

    def test_missing_parameter_line(self):
        with pytest.raises(InstanceFormatError):
            parse_instance("minms 1\n")
