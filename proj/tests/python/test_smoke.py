"""Smoke tests for the minoverlap extension module."""

from fractions import Fraction

import pytest

import minoverlap as mo


def frac(s: str) -> Fraction:
    return Fraction(s)


def test_builtin_certificates_exact():
    for name, lo, hi in [
        ("p15", Fraction("0.38153154"), Fraction("0.38153155")),
        ("p19", Fraction("0.381112263316104815"), Fraction("0.381112263316104817")),
    ]:
        f = mo.builtin(name)
        assert f.is_symmetric()
        assert frac(f.integral_fraction()) == 1
        value, argmax = mo.max_overlap_exact(f)
        assert lo <= frac(value) <= hi
        assert argmax == sorted(argmax)

    v51 = frac(mo.max_overlap_exact(mo.builtin("p51"))[0])
    assert abs(v51 - Fraction("0.3809268534330870")) <= Fraction(5, 10**17)


def test_hand_computed_shift_table():
    f = mo.StepFunction.raw(["1", "0"])
    table = mo.shift_values_exact(f)
    assert table["g"] == ["0/1", "0/1", "1/1"]
    assert table["max"] == "1/1"
    assert table["argmax"] == [1]

    value, argmax = mo.max_overlap(mo.StepFunction.raw(["0.5", "0.5"]))
    assert value == pytest.approx(0.5, abs=1e-15)
    assert argmax == [0]


def test_validation_errors():
    with pytest.raises(ValueError):
        mo.StepFunction.normalized(["0.25", "0.25"])  # integral 1/2
    boxless = mo.StepFunction.raw(["1.5", "0"])  # raw admits it ...
    with pytest.raises(ValueError):
        mo.max_overlap_exact(boxless)  # ... the evaluator refuses it
    with pytest.raises(RuntimeError):
        mo.from_json("not json")
    with pytest.raises(mo.CapacityError):
        mo.min_over_partitions(30)


def test_json_round_trip():
    f = mo.builtin("p19")
    back = mo.from_json(f.to_json())
    assert back == f
    assert back.exact_values() == f.exact_values()


def test_continuous_shift_interpolates():
    f = mo.StepFunction.raw(["0.5", "0.5"])
    assert mo.continuous_at(f, 0.5) == pytest.approx(0.375, abs=1e-14)
    assert mo.continuous_at(f, 2.0) == 0.0


def test_discrete_bridge():
    result = mo.min_over_partitions(2)
    assert result["value"] == 1
    assert result["witness"] == [1, 4]

    counts = mo.difference_counts(2, [1, 4])
    assert counts["max"] == 1
    assert counts["counts"] == {-2: 1, -1: 1, 1: 1, 2: 1}

    f = mo.partition_to_stepfn(2, [1, 4])
    table = mo.shift_values_exact(f)
    n = 2
    for k, count in counts["counts"].items():
        g_at_minus_k = Fraction(table["g"][-k + f.n - 1])
        assert Fraction(count) == n * g_at_minus_k


def test_optimizer_deterministic():
    runs = [
        mo.optimize(steps=4, restarts=2, max_iters=300, seed=3)
        for _ in range(2)
    ]
    assert runs[0]["value_fraction"] == runs[1]["value_fraction"]
    assert runs[0]["best"] == runs[1]["best"]
    best = runs[0]["best"]
    assert frac(best.integral_fraction()) == 1
    assert frac(runs[0]["value_fraction"]) == frac(mo.max_overlap_exact(best)[0])


def test_symmetric_two_steps_is_half():
    result = mo.optimize(steps=2, symmetric=True, restarts=1, seed=0)
    assert frac(result["value_fraction"]) == Fraction(1, 2)


def test_projection():
    assert mo.project_feasible([0.0, 0.0]) == [0.5, 0.5]
    assert mo.project_feasible([2.0, -1.0]) == [1.0, 0.0]
