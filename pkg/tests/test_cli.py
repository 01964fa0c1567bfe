"""Command dispatch, file formats, exit codes, and report round trips."""

import json

import pytest

from toricfan.cli import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_PROPERTY_FAILS,
    InputError,
    fan_to_json,
    parse_fan_file,
    run,
)
from toricfan.fan import Fan


@pytest.fixture()
def yu_file(tmp_path):
    path = tmp_path / "y32.json"
    assert run(["family", "yu", "--n", "3", "--u", "2", "--emit", str(path)]) == EXIT_OK
    return path


class TestFanFiles:
    def test_p1_roundtrip(self):
        fan, labels, warnings = parse_fan_file('{"dim":1,"rays":[[1],[-1]],"max_cones":[[0],[1]]}')
        assert fan.ambient_rank == 1
        assert not warnings
        again, _, _ = parse_fan_file(fan_to_json(fan))
        assert again == fan

    def test_roundtrip_preserves_order(self, yu_file):
        fan, labels, _ = parse_fan_file(yu_file.read_text())
        again, labels2, _ = parse_fan_file(fan_to_json(fan, labels))
        assert again == fan
        assert labels2 == labels
        assert labels[:3] == ["sigma_1", "sigma_2", "sigma_3"]

    def test_zero_ray_rejected(self):
        with pytest.raises(InputError, match="zero"):
            parse_fan_file('{"dim":1,"rays":[[0]],"max_cones":[[0]]}')

    def test_primitivization_warns(self):
        fan, _, warnings = parse_fan_file(
            '{"dim":2,"rays":[[2,0],[0,1],[-1,-1]],"max_cones":[[0,1],[0,2],[1,2]]}'
        )
        assert fan.rays[0] == (1, 0)
        assert warnings and "primitivized" in warnings[0]

    def test_duplicate_after_primitivization_rejected(self):
        with pytest.raises(InputError, match="duplicate"):
            parse_fan_file('{"dim":1,"rays":[[2],[1]],"max_cones":[[0],[1]]}')

    def test_malformed_json_location(self):
        with pytest.raises(InputError, match="line 1"):
            parse_fan_file("{nope")


class TestExitCodes:
    def test_picard_reports_trivial(self, yu_file, capsys):
        assert run(["picard", "--fan", str(yu_file), "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["picard"]["trivial"] is True

    def test_projective_infeasible(self, yu_file, capsys):
        assert run(["projective", "--fan", str(yu_file)]) == EXIT_PROPERTY_FAILS
        assert "Infeasible" in capsys.readouterr().out

    def test_egyptian_holds(self, yu_file, capsys):
        assert run(["egyptian", "--fan", str(yu_file), "--ray", "0", "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["egyptian"] is True

    def test_missing_file(self, tmp_path, capsys):
        assert run(["picard", "--fan", str(tmp_path / "nope.json")]) == EXIT_INPUT_ERROR

    def test_malformed_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        assert run(["validate", "--fan", str(bad)]) == EXIT_INPUT_ERROR

    def test_validate_invalid_fan_is_property_failure(self, tmp_path, capsys):
        overlap = tmp_path / "overlap.json"
        overlap.write_text('{"dim":2,"rays":[[1,0],[1,2],[1,1],[0,1]],"max_cones":[[0,1],[2,3]]}')
        assert run(["validate", "--fan", str(overlap)]) == EXIT_PROPERTY_FAILS

    def test_complete(self, yu_file, tmp_path, capsys):
        assert run(["complete", "--fan", str(yu_file)]) == EXIT_OK
        part = tmp_path / "part.json"
        part.write_text('{"dim":2,"rays":[[1,0],[0,1]],"max_cones":[[0,1]]}')
        assert run(["complete", "--fan", str(part)]) == EXIT_PROPERTY_FAILS

    def test_exit_codes_deterministic(self, yu_file, capsys):
        codes = {run(["projective", "--fan", str(yu_file)]) for _ in range(3)}
        capsys.readouterr()
        assert codes == {EXIT_PROPERTY_FAILS}

    def test_egyptian_fails_on_non_pyramidal_star(self, tmp_path, capsys):
        rays = [[1, 1, 0, 1], [1, -1, 0, 1], [-1, -1, 0, 1], [-1, 1, 0, 1], [0, 0, 1, 1], [0, 3, -1, 1]]
        fan_file = tmp_path / "np.json"
        fan_file.write_text(json.dumps({"dim": 4, "rays": rays, "max_cones": [list(range(6))]}))
        assert run(["egyptian", "--fan", str(fan_file), "--ray", "5"]) == EXIT_INPUT_ERROR
        capsys.readouterr()
        assert run(["egyptian", "--fan", str(fan_file), "--ray", "5", "--allow-incomplete"]) \
            == EXIT_PROPERTY_FAILS
        capsys.readouterr()


class TestDivisorCommands:
    def test_cartier_and_index(self, yu_file, tmp_path, capsys):
        divisor = tmp_path / "de.json"
        divisor.write_text(json.dumps({"coefficients": [1, 0, 0, 0, 0, 0, 0, 0]}))
        assert run(["cartier", "--fan", str(yu_file), "--divisor", str(divisor), "--json"]) \
            == EXIT_PROPERTY_FAILS
        report = json.loads(capsys.readouterr().out)
        assert report["cartier"] is False and report["q_cartier"] is False
        assert run(["index", "--fan", str(yu_file), "--divisor", str(divisor)]) == EXIT_PROPERTY_FAILS
        capsys.readouterr()

    def test_index_after_modification(self, yu_file, tmp_path, capsys):
        modified = tmp_path / "mod.json"
        assert run(["modify", "--fan", str(yu_file), "--ray", "0", "--emit", str(modified)]) == EXIT_OK
        capsys.readouterr()
        divisor = tmp_path / "de.json"
        divisor.write_text(json.dumps({"coefficients": [1, 0, 0, 0, 0, 0, 0, 0]}))
        assert run(["index", "--fan", str(modified), "--divisor", str(divisor), "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["q_cartier"] is True
        assert report["cartier_index"] == 1

    def test_degree_on_projective_space(self, tmp_path, capsys):
        fan_file = tmp_path / "p2.json"
        fan_file.write_text('{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[0,2],[1,2]]}')
        divisor = tmp_path / "o1.json"
        divisor.write_text('{"coefficients":[1,0,0]}')
        assert run(["degree", "--fan", str(fan_file), "--divisor", str(divisor), "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["degree"] == 1

    def test_wrong_length_divisor(self, yu_file, tmp_path, capsys):
        divisor = tmp_path / "short.json"
        divisor.write_text('{"coefficients":[1,0]}')
        assert run(["cartier", "--fan", str(yu_file), "--divisor", str(divisor)]) == EXIT_INPUT_ERROR


class TestClassGroupCommand:
    def test_classgroup(self, yu_file, capsys):
        assert run(["classgroup", "--fan", str(yu_file), "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["class_group"]["rank"] == 5


class TestReportCommand:
    def test_full_pipeline(self, yu_file, capsys):
        assert run(["report", "--fan", str(yu_file), "--ray", "0", "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["egyptian"] is True
        assert report["divisor_projective"] is True
        assert report["modification"]["verified"] is True
        assert report["degree"] == 1
        assert report["growth"] == "c₃(E_t) = t² + O(t)"

    def test_incomplete_fan_is_an_input_error(self, tmp_path, capsys):
        rays = [[1, 1, 0, 1], [1, -1, 0, 1], [-1, -1, 0, 1], [-1, 1, 0, 1], [0, 0, 1, 1], [0, 3, -1, 1]]
        fan_file = tmp_path / "np.json"
        fan_file.write_text(json.dumps({"dim": 4, "rays": rays, "max_cones": [list(range(6))]}))
        assert run(["report", "--fan", str(fan_file), "--ray", "5"]) == EXIT_INPUT_ERROR
        capsys.readouterr()

    def test_not_egyptian_exits_without_modification(self, tmp_path, capsys, cube_suspension_fan):
        from toricfan.cli import fan_to_json
        fan_file = tmp_path / "cube.json"
        fan_file.write_text(fan_to_json(cube_suspension_fan))
        assert run(["report", "--fan", str(fan_file), "--ray", "0", "--json"]) == EXIT_PROPERTY_FAILS
        report = json.loads(capsys.readouterr().out)
        assert report["egyptian"] is False
        assert "modification" not in report  # the pipeline stops at the failed hypothesis
        assert run(["modify", "--fan", str(fan_file), "--ray", "0"]) == EXIT_PROPERTY_FAILS
        capsys.readouterr()

    def test_family_without_emit_prints_fan(self, capsys):
        assert run(["family", "yu", "--n", "3", "--u", "1", "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["fan"]["dim"] == 3
        assert len(report["fan"]["rays"]) == 8

    def test_unknown_family(self, capsys):
        assert run(["family", "nope", "--n", "3", "--u", "1"]) == EXIT_INPUT_ERROR
        capsys.readouterr()
