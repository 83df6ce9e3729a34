"""Command behavior: exact output bytes and the exit-code contract."""

from __future__ import annotations

import pytest

from quasivariety.cli import main

RULES_PAIR = "universe finite 2\n0 -> 1\n"
RULES_TRI = "universe finite 3\n0 1 -> 2\n"
GROUP_ICO = "universe group 2\nrelator aa\nrelator bbb\nrelator ababababab\n"
GROUP_FREE1 = "universe group 1\n"
SFT_ORBIT = "universe subshift ab\nforbid aa\nforbid bb\n"
SFT_FULL = "universe subshift ab\n"
IDEAL_T2P1 = "universe ideal\ngenerator 1t^2+1\n"
MAPS_ONEZERO = "universe finite 3\n+0 -1\n"
MAPS_REDUNDANT = "universe finite 3\n+0 -1\n+0 -1 -2\n"
MAPS_BROKEN = "universe finite 2\n-0 -1\n"


@pytest.fixture
def files(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_saturate_finite_example(files, capsys):
    f = files("pair.rules", RULES_PAIR)
    code, out, _ = run(capsys, "saturate", f, "--present", "0", "--budget", "10")
    assert code == 0
    assert out == "# saturate kind=finite budget=10 present=0\n0\n1\n"


def test_saturate_porcelain_and_steps(files, capsys):
    f = files("pair.rules", RULES_PAIR)
    code, out, _ = run(capsys, "saturate", f, "--present", "0", "--porcelain")
    assert code == 0
    assert out == "0\t0\t0\n1\t1\t1\n"
    code, out, _ = run(capsys, "saturate", f, "--present", "0", "--steps")
    assert out.endswith("0\t0\n1\t1\n")


def test_saturate_group_includes_conjugated_relator(files, capsys):
    f = files("conj.group", "universe group 2\nrelator abAB\n")
    code, out, _ = run(capsys, "saturate", f, "--budget", "7045")
    assert code == 0
    assert "\naabABA\n" in out


def test_saturate_empty_subshift_prints_nothing(files, capsys):
    f = files("full.sft", SFT_FULL)
    code, out, _ = run(capsys, "saturate", f, "--porcelain")
    assert code == 0
    assert out == ""


def test_complement_minimal_sft_lists_admissible_words(files, capsys):
    f = files("orbit.sft", SFT_ORBIT)
    code, out, _ = run(capsys, "complement", f, "--porcelain")
    assert code == 0
    words = [line.split("\t")[1] for line in out.splitlines()]
    assert words == ["-", "a", "b", "ab", "ba", "aba", "bab",
                     "abab", "baba", "ababa", "babab", "ababab", "bababa"]


def test_complement_group_uniform_includes_ab(files, capsys):
    f = files("ico.group", GROUP_ICO)
    code, out, _ = run(capsys, "complement", f, "--uniform", "--cap", "2")
    assert code == 0
    lines = out.splitlines()
    assert "ab" in lines
    assert "aa" not in lines  # aa is a relator, inside the point


def test_complement_z_family_certifies_powers(files, capsys):
    f = files("free1.group", GROUP_FREE1)
    code, out, _ = run(capsys, "complement", f, "--family", "z", "--cap", "3")
    assert code == 0
    lines = out.splitlines()
    assert "aaa" in lines and "A" in lines and "-" not in lines


def test_complement_unknown_family_is_a_parse_error(files, capsys):
    f = files("free1.group", GROUP_FREE1)
    code, _, err = run(capsys, "complement", f, "--family", "w")
    assert code == 2
    assert "unknown family" in err


def test_complement_ideal_default_witness(files, capsys):
    f = files("t2p1.ideal", IDEAL_T2P1)
    code, out, _ = run(capsys, "complement", f, "--cap", "1")
    assert code == 0
    lines = out.splitlines()[1:]
    assert "1" in lines and "1t" in lines and "0" not in lines
    assert len(lines) == 8


def test_decide_exit_codes(files, capsys):
    f = files("ico.group", GROUP_ICO)
    code, out, _ = run(capsys, "decide", f, "aa")
    assert code == 0
    assert out.splitlines()[-1] == "Equal (1 rounds)"
    code, out, _ = run(capsys, "decide", f, "ab")
    assert code == 1
    assert out.splitlines()[-1] == "NotEqual (1 rounds)"
    code, out, _ = run(capsys, "decide", f, "ab", "--cap", "0")
    assert code == 4
    assert out.splitlines()[-1] == "Undecided (0 rounds)"


def test_decide_malformed_word(files, capsys):
    f = files("ico.group", GROUP_ICO)
    code, _, err = run(capsys, "decide", f, "xyz")
    assert code == 2
    assert err


def test_pi01_single_zero_converts_verbatim(files, capsys):
    f = files("onezero.maps", MAPS_ONEZERO)
    code, out, _ = run(capsys, "pi01", f, "--porcelain")
    assert code == 0
    assert out == "universe finite 3\n0 -> 1\n"


def test_pi01_verify_prints_equal(files, capsys):
    f = files("redundant.maps", MAPS_REDUNDANT)
    code, out, _ = run(capsys, "pi01", f, "--verify")
    assert code == 0
    assert out.splitlines()[-1] == "EQUAL"


def test_pi01_precondition_failure_names_the_points(files, capsys):
    f = files("broken.maps", MAPS_BROKEN)
    code, _, err = run(capsys, "pi01", f)
    assert code == 5
    assert "intersection" in err and "[0]" in err and "[1]" in err


def test_quasiperiodicity_rows(files, capsys):
    f = files("orbit.sft", SFT_ORBIT)
    code, out, _ = run(capsys, "quasiperiodicity", f, "--cap", "2", "--porcelain")
    assert code == 0
    assert out == "1\t2\n2\t3\n"


def test_quasiperiodicity_fibonacci_row(capsys):
    code, out, _ = run(capsys, "quasiperiodicity", "--substitution", "fibonacci",
                       "--cap", "1", "--porcelain")
    assert code == 0
    assert out == "1\t3\n"


def test_quasiperiodicity_cap_marker(files, capsys):
    f = files("orbit.sft", SFT_ORBIT)
    code, out, _ = run(capsys, "quasiperiodicity", f, "--cap", "2", "--budget", "2",
                       "--porcelain")
    assert code == 0
    assert out == "1\t2\n2\t>cap\n"


def test_quasiperiodicity_rejects_the_full_shift(files, capsys):
    f = files("full.sft", SFT_FULL)
    code, _, err = run(capsys, "quasiperiodicity", f)
    assert code == 3
    assert "not minimal" in err


def test_lattice_meet_and_join(files, capsys):
    f = files("tri.rules", RULES_TRI)
    code, out, _ = run(capsys, "lattice", f, "--x", "0", "--y", "1", "--porcelain")
    assert code == 0
    assert out == "meet\t-\njoin\t0 1 2\n"


def test_lattice_rejects_non_points(files, capsys):
    f = files("tri.rules", RULES_TRI)
    code, _, err = run(capsys, "lattice", f, "--x", "0,1", "--y", "1")
    assert code == 3
    assert "not a point" in err


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "closure-laws", "--porcelain")
    assert code == 0
    name, outcome, detail = out.strip().split("\t")
    assert (name, outcome) == ("closure-laws", "pass")
    assert "50 instances" in detail


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 2
    assert "unknown suite" in err


def test_parse_errors_exit_two(files, capsys):
    junk = files("junk.txt", "garbage\n")
    code, _, err = run(capsys, "saturate", junk)
    assert code == 2 and "universe" in err
    code, _, err = run(capsys, "saturate", str(files("x", "")) + ".missing")
    assert code == 2
    bad = files("bad.rules", "universe finite 2\n0 -> 9\n")
    code, _, err = run(capsys, "saturate", bad)
    assert code == 2 and "line 2" in err


def test_identical_invocations_are_byte_identical(files, capsys):
    f = files("orbit.sft", SFT_ORBIT)
    _, first, _ = run(capsys, "complement", f)
    _, second, _ = run(capsys, "complement", f)
    assert first == second
