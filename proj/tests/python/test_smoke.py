import math

import pytest

import svps


def test_version():
    assert isinstance(svps.__version__, str)
    assert svps.__version__.count(".") == 2


def test_trap_evaluation():
    problem = svps.make_problem(3, 2)
    assert problem.genome_length == 6
    assert problem.optimum_fitness == 6.0
    # One solved block, one block one bit short of the deceptive optimum.
    assert problem.evaluate("111000") == 5.0
    assert problem.evaluate("111111") == 6.0
    assert svps.unitation("10110") == 3
    params = svps.TrapParams.defaults_for(4)
    assert svps.trap_value(0, params) == 3.0
    assert svps.trap_value(4, params) == 4.0


def test_schedule_endpoints():
    sched = svps.Schedule(100, 1.0, 0.25, 10)
    assert sched.size_at(0) == 100
    assert sched.size_at(10) == 25
    assert sched.size_at(50) == 25
    sizes = sched.sizes()
    assert sizes[0] == 100 and sizes[-1] == 25
    assert all(a >= b for a, b in zip(sizes, sizes[1:]))
    assert svps.Schedule.constant(19).size_at(7) == 19


def test_run_deterministic():
    problem = svps.make_problem(2, 2)
    sched = svps.Schedule.constant(19)
    first = svps.run(problem, sched, seed=12345)
    again = svps.run(problem, sched, seed=12345)
    assert first.success == again.success
    assert first.total_evaluations == again.total_evaluations
    assert first.evaluations_to_solution == again.evaluations_to_solution
    if first.success:
        assert first.termination == svps.Termination.optimum_found
        assert first.evaluations_to_solution <= first.total_evaluations


def test_run_batch_reliability():
    problem = svps.make_problem(2, 2)
    report = svps.run_batch(problem, svps.Schedule.constant(40), 20, master_seed=7)
    assert report.runs == 20
    assert report.successes >= 18  # generous size for a tiny instance
    assert report.aes_mean > 0
    assert len(report.outcomes) == 20
    assert report.passed(svps.ReliabilityCriterion(20, 18))


def test_t_test():
    a = svps.SampleStats(10.0, 1.0, 50)
    b = svps.SampleStats(12.0, 1.0, 50)
    result = svps.two_sample_t_test(a, b)
    assert result.significant
    assert result.t == pytest.approx(-10.0)
    same = svps.two_sample_t_test(a, a)
    assert not same.significant


def test_power_law():
    points = [(x, 2.0 * x**1.5) for x in (10.0, 20.0, 40.0, 80.0)]
    fit = svps.fit_power_law(points)
    assert fit.exponent == pytest.approx(1.5)
    assert fit.coefficient == pytest.approx(2.0)
    assert fit.r_squared == pytest.approx(1.0)
    with pytest.raises(svps.EstimationError):
        svps.fit_power_law([(1.0, 1.0), (2.0, 2.0)])


def test_sizing_pipeline():
    problem = svps.make_problem(2, 2)
    crit = svps.ReliabilityCriterion(20, 19)
    sizing = svps.run_sizing(problem, crit, master_seed=2024)
    assert 2 <= sizing.n_refined <= sizing.n_bisection
    assert sizing.g_max_estimate >= 1
    phases = {record.phase for record in sizing.reports}
    assert "bisection" in phases
