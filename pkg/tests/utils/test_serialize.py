# coding: utf-8
"""Test the structured text format."""
from fractions import Fraction

import pytest

from tamedynfw.core.cbspace import CBSpace, build_space
from tamedynfw.core.dendrite import GeometricPoint, build_twocolor_stage, build_wazewski_stage
from tamedynfw.core.dynamics import identity_homeo, pab_approx, rigidity_sequence
from tamedynfw.core.ordinal import parse_ordinal
from tamedynfw.report import Report, Status
from tamedynfw.utils.serialize import HEADER, SerializationError, dump, dumps, load, loads


def test_space_round_trip():
    space = build_space(parse_ordinal("w*2+1"))
    text = dumps(space)
    assert text == "# tamedynfw 1\nkind space\nspace seed=w*2 interval=0/1,1/1\nend\n"
    assert loads(text) == space


def test_space_interval_round_trip():
    space = CBSpace(parse_ordinal("w^(w+1)+3"), (Fraction(1, 3), Fraction(1, 2)))
    assert loads(dumps(space)) == space


def test_twocolor_stage_round_trip():
    stage = build_twocolor_stage(3, 1)
    restored = loads(dumps(stage))
    assert restored == stage
    assert restored.bonding == stage.bonding
    assert dumps(restored) == dumps(stage)


def test_wazewski_stage_round_trip():
    stage = build_wazewski_stage(['3', 'w'], 1, 2)
    restored = loads(dumps(stage))
    assert restored == stage
    assert restored.params == {'orders': ['3', 'w'], 'degrees': [3, 4], 'width': 2, 'omega_degree': 4}


def test_stage_records():
    lines = dumps(build_twocolor_stage(1, 1)).splitlines()
    assert lines[:2] == [HEADER, "kind stage"]
    assert lines[2].startswith("stage mode=twocolor index=1 ")
    assert "param int blocks=2" in lines
    assert "param int marks_per_arc=1" in lines
    assert lines[-1] == "end"
    assert any(line.startswith("vertex 0 color=") and line.endswith("role=ramification born=0 origin=-")
               for line in lines)
    assert all("." not in line for line in lines if line.startswith("edge "))
    assert any(line.startswith("bond ") for line in lines)


def test_identity_homeo_round_trip():
    stage = build_wazewski_stage([3], 1, 1)
    h = identity_homeo(stage)
    text = dumps(h)
    restored = loads(text)
    assert dumps(restored) == text
    assert "target-stage" not in text
    assert "bend " not in text
    assert sum(1 for line in text.splitlines() if line.startswith("pair ")) == len(stage.vertices)


def test_refined_target_homeo_round_trip():
    stage = build_wazewski_stage([3], 1, 1)
    a, b = stage.leaves()[:2]
    sample = [GeometricPoint(v) for v in sorted(stage.vertices)]
    h = pab_approx(stage, a, b, sample, Fraction(1, 8))
    text = dumps(h)
    assert "target-stage mode=wazewski" in text
    assert any(line.startswith("bend ") for line in text.splitlines())
    restored = loads(text)
    assert dumps(restored) == text
    assert restored.target == h.target
    assert restored.vertex_map == h.vertex_map
    for x in sample:
        assert restored.apply(x) == h.apply(x)


def test_missing_pair_record():
    text = dumps(identity_homeo(build_wazewski_stage([3], 0, 1)))
    lines = [line for line in text.splitlines() if line != "pair 3 -> 3"]
    with pytest.raises(SerializationError, match="Pair count"):
        loads("\n".join(lines) + "\n")


def test_rigidity_homeo_round_trip():
    stage = build_wazewski_stage([3], 0, 1)
    g = rigidity_sequence(stage, 3)[-1]
    restored = loads(dumps(g))
    x = stage.point_on_edge(0, 1, Fraction(1, 4))
    assert restored.apply(x) == g.apply(x)


def test_report_round_trip():
    report = Report('dynamics')
    report.add('beta-le-2', True, 'maps=3 checks=6 failed=0')
    report.add('minimal', False, 'x=e0-1@1/2 bound=1/4')
    report.add('skipped', Status.SKIP)
    restored = loads(dumps(report))
    assert restored.as_dict() == report.as_dict()


def test_dump_and_load(tempdir):
    stage = build_twocolor_stage(1, 2)
    dump(stage, 'stage.txt')
    assert load('stage.txt') == stage


def test_missing_header():
    with pytest.raises(SerializationError) as excinfo:
        loads("kind space\nspace seed=1 interval=0/1,1/1\nend\n")
    assert excinfo.value.line == 1


def test_version_mismatch():
    text = dumps(build_space(parse_ordinal("2"))).replace(HEADER, "# tamedynfw 2")
    with pytest.raises(SerializationError, match="version") as excinfo:
        loads(text)
    assert excinfo.value.line == 1


def test_truncated_file():
    lines = dumps(build_twocolor_stage(1, 1)).splitlines()
    truncated = "\n".join(lines[:-5]) + "\n"
    with pytest.raises(SerializationError, match="Truncated") as excinfo:
        loads(truncated)
    assert excinfo.value.line == len(lines) - 4
    assert "line {}".format(len(lines) - 4) in str(excinfo.value)


def test_malformed_record_names_its_line():
    lines = dumps(build_wazewski_stage([3], 0, 1)).splitlines()
    index = next(i for i, line in enumerate(lines) if line.startswith("edge "))
    lines[index] = "edge 0 1 len=half"
    with pytest.raises(SerializationError) as excinfo:
        loads("\n".join(lines) + "\n")
    assert excinfo.value.line == index + 1


def test_contradicting_role():
    lines = dumps(build_wazewski_stage([3], 0, 1)).splitlines()
    index = next(i for i, line in enumerate(lines) if line.startswith("vertex 1 "))
    lines[index] = lines[index].replace("role=endpoint", "role=ramification")
    with pytest.raises(SerializationError, match="Role") as excinfo:
        loads("\n".join(lines) + "\n")
    assert excinfo.value.line == index + 1


def test_contradicting_bond():
    lines = dumps(build_twocolor_stage(1, 1)).splitlines()
    index = next(i for i, line in enumerate(lines) if line.startswith("bond "))
    vertex = lines[index].split()[1]
    lines[index] = "bond {} -> 999".format(vertex)
    with pytest.raises(SerializationError, match="Bond") as excinfo:
        loads("\n".join(lines) + "\n")
    assert excinfo.value.line == index + 1


def test_contradicting_summary():
    report = Report('ordinal')
    report.add('associativity', True)
    text = dumps(report).replace("pass=1", "pass=2")
    with pytest.raises(SerializationError, match="Summary"):
        loads(text)


def test_unknown_kind():
    with pytest.raises(SerializationError) as excinfo:
        loads("{}\nkind cube\nend\n".format(HEADER))
    assert excinfo.value.line == 2


def test_unsupported_artifact():
    with pytest.raises(ValueError):
        dumps({'not': 'an artifact'})


def test_error_survives_pickling():
    import pickle
    error = pickle.loads(pickle.dumps(SerializationError("broken", 7)))
    assert error.line == 7
    assert str(error) == "line 7: broken"
