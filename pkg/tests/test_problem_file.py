from pathlib import Path

import pytest

from errors import InputError
from problem_file import KEY_ORDER, TASKS, emit_problem, load_problem, parse_problem
from regulous import StratifiedFraction

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

CUSP = """\
# cuspidal cubic
task: regulous-check
vars: x,y
fraction: y/x
---
-x^3+y^2
"""


def problem_text(*header, body="y^2 - x^3"):
    return "\n".join(header) + "\n---\n" + body + "\n"


def test_parse_reads_header_and_body():
    problem = parse_problem(CUSP)
    assert problem.task == "regulous-check"
    assert problem.variables == ("x", "y")
    assert problem.order == "grevlex"
    assert [g.line for g in problem.generators] == [6]
    assert str(problem.fraction()) == "y / x"
    assert problem.ideal_generators() == [problem.ring.var("y") ** 2 - problem.ring.var("x") ** 3]


def test_emit_is_canonical():
    assert emit_problem(parse_problem(CUSP)) == (
        "task: regulous-check\nvars: x, y\norder: grevlex\nfraction: y / x\n---\n-x^3 + y^2\n"
    )


def test_emit_is_idempotent_on_every_fixture():
    for path in sorted(FIXTURES.glob("*.problem")):
        once = emit_problem(load_problem(str(path)))
        assert emit_problem(parse_problem(once)) == once, path.name


def test_every_fixture_names_a_known_task():
    for path in FIXTURES.glob("*.problem"):
        problem = load_problem(str(path))
        assert problem.task in TASKS
        assert problem.path == str(path)


def test_tower_entries_live_in_the_extended_ring():
    problem = load_problem(str(FIXTURES / "cusp_nullstellensatz.problem"))
    ring = problem.extended_ring(problem.names("adjoin"))
    assert ring.variables == ("t1", "x", "y")
    assert problem.polynomial("target", ring) == ring.var("t1")


def test_strata_build_a_stratified_fraction():
    problem = parse_problem(problem_text(
        "task: regulous-check", "vars: x, y", "stratum: y / x", "stratum: x / y", body="x*y",
    ))
    f = problem.function()
    assert isinstance(f, StratifiedFraction)
    assert len(f.strata) == 2
    assert f.final.is_zero()


def test_components_are_comma_separated():
    problem = parse_problem(problem_text(
        "task: regulous-check", "vars: x, y", "fraction: y / x", "component: x", "component: y", body="x*y",
    ))
    assert [len(c.generators) for c in problem.variety().components] == [1, 1]


@pytest.mark.parametrize("header, line", [
    (("task: gb", "vars: x", "colour: red"), 3),
    (("task: gb", "vars: x", "vars: y"), 3),
    (("task: regulous-check", "vars: x, y", "fraction: y / x", "target: x"), 4),
    (("task: gb", "vars: x", "order: deglex"), 3),
    (("task: frobnicate", "vars: x"), 1),
    (("task: gb", "vars: x, 2y"), 2),
    (("task: gb", "vars: x", "order:"), 3),
    (("task: gb", "vars x"), 2),
])
def test_header_errors_carry_the_line(header, line):
    with pytest.raises(InputError) as info:
        parse_problem(problem_text(*header, body="x"))
    assert info.value.line == line


def test_missing_separator():
    with pytest.raises(InputError, match="---"):
        parse_problem("task: gb\nvars: x\n")


def test_missing_required_entries():
    with pytest.raises(InputError, match="target"):
        parse_problem(problem_text("task: member", "vars: x", body="x"))
    with pytest.raises(InputError, match="fraction"):
        parse_problem(problem_text("task: regulous-check", "vars: x, y"))
    with pytest.raises(InputError, match="either"):
        parse_problem(problem_text("task: regulous-check", "vars: x, y", "fraction: y / x", "stratum: y / x"))


def test_polynomial_errors_report_file_positions():
    with pytest.raises(InputError) as info:
        parse_problem(problem_text("task: regulous-check", "vars: x, y", "fraction: y / (x + z)"))
    assert (info.value.line, info.value.column) == (3, 20)

    with pytest.raises(InputError) as info:
        parse_problem(problem_text("task: gb", "vars: x, y", body="y^2 - x^3 + w"))
    assert (info.value.line, info.value.column) == (4, 13)

    with pytest.raises(InputError) as info:
        parse_problem(problem_text("task: regulous-check", "vars: x, y", "fraction: y / x", "component: x, y + w",
                                   body="x*y"))
    assert (info.value.line, info.value.column) == (4, 19)


def test_integer_entries_are_validated():
    problem = parse_problem(problem_text("task: swan-scan", "vars: x, y", "degree: two"))
    with pytest.raises(InputError) as info:
        problem.integer("degree")
    assert info.value.line == 3
    assert problem.integer("missing", 5) == 5


def test_unreadable_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        load_problem(str(tmp_path / "absent.problem"))


def test_every_task_key_has_a_canonical_position():
    for required, optional in TASKS.values():
        assert set(required) | set(optional) <= set(KEY_ORDER)
