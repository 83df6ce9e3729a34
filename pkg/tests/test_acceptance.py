"""Acceptance gate: one named suite per test, one pass/fail line each.

Every suite lives in quasivariety.verify so the same checks are
reachable from the command line via ``qvar verify``.  Time limits are
enforced inside run_suite and flip the result when exceeded.
"""

from __future__ import annotations

from quasivariety.verify import run_suite


def _check(name: str) -> None:
    r = run_suite(name)
    line = f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}"
    print(line)
    assert r.passed, line


def test_closure_laws_and_engine_equal_brute_force():
    _check("closure-laws")


def test_presentation_operator_presents_every_point():
    _check("presentation")


def test_converse_presentation_rebuilds_the_space():
    _check("converse-presentation")


def test_maximal_and_uniform_complements_are_exact():
    _check("maximal-complement")


def test_below_family_certificates_cover_integer_powers():
    _check("below-family")


def test_generated_space_makes_every_subset_maximal():
    _check("converse-maximality")


def test_discriminators_enumerate_complements_exactly():
    _check("discriminator")


def test_simple_group_ball_decides_with_oracle_agreement():
    _check("simple-group")


def test_minimal_subshift_complement_recovery_and_fibonacci():
    _check("minimal-subshift")


def test_least_code_map_and_recovery_are_exact():
    _check("g-map")


def test_pattern_class_conversion_preserves_points():
    _check("pi01")


def test_ideal_demo_agrees_with_the_division_oracle():
    _check("ideal-demo")
