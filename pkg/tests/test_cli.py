"""End-to-end CLI tests: envelopes, schema conformance, exit codes, goldens."""

import json
from importlib import resources

import jsonschema
import pytest

from conftest import GOLDEN_DIR, km_payload, run_km
from golden_cases import CASES
from kmgroups import GeneralizedCartanMatrix
from kmgroups.cli import parse_gcm_text, serialize_gcm


@pytest.fixture(scope="session")
def envelope_schema():
    text = (
        resources.files("kmgroups").joinpath("schemas/envelope.schema.json")
        .read_text("utf-8")
    )
    schema = json.loads(text)
    jsonschema.Draft7Validator.check_schema(schema)
    return schema


class TestInputParsing:
    def test_json_object(self):
        g = parse_gcm_text('{"matrix": [[2, -1], [-1, 2]], "labels": ["x", "y"]}')
        assert g.entries == ((2, -1), (-1, 2))
        assert g.labels == ("x", "y")

    def test_bare_json_array(self):
        g = parse_gcm_text("[[2, -1], [-1, 2]]")
        assert g.rank == 2

    def test_plain_rows_with_comments(self):
        g = parse_gcm_text("# a comment\n2 -1\n\n-1 2\n")
        assert g.entries == ((2, -1), (-1, 2))

    @pytest.mark.parametrize(
        "text", ["", "{}", "[ooops", "2 x\n-1 2", '{"rows": [[2]]}']
    )
    def test_rejects_garbage(self, text):
        from kmgroups.cli import InputError

        with pytest.raises(InputError):
            parse_gcm_text(text)

    def test_round_trip(self):
        g = GeneralizedCartanMatrix.from_rows(
            [[2, -2, 0], [-2, 2, -1], [0, -1, 2]], labels=["a", "b", "c"]
        )
        assert parse_gcm_text(serialize_gcm(g)) == g


class TestEnvelopes:
    def test_every_command_validates_against_the_schema(
        self, envelope_schema, catalog_paths
    ):
        a2 = catalog_paths["finite_a2"]
        aff1 = catalog_paths["affine_a1"]
        aff2 = catalog_paths["affine_a2"]
        invocations = [
            ["validate", a2],
            ["classify", aff2],
            ["coxeter", aff1],
            ["decompose", aff2, "--set", "1,2"],
            ["poset", aff2],
            ["nerve", aff2],
            ["ends", aff2],
            ["indec", aff2, "--q", "4"],
            ["report", aff1, "--q", "2"],
            ["weyl", "word", aff1, "--word", "1,2,1"],
            ["weyl", "straight", aff1, "--word", "1,2", "--n", "4"],
            ["roots", aff1, "--max-height", "4", "--set", "1"],
            ["conj", a2, "--from", "1", "--to", "2"],
            ["conj", a2, "--from", "1", "--to", "1,2"],  # not conjugate
            ["closure", a2, "--word", "1,2,1", "--depth", "1"],
            [
                "jregular", aff1, "--set", "1,2", "--max-len", "2",
                "--n", "6", "--max-height", "7", "--depth", "1",
            ],
            [
                "jregular", aff1, "--set", "1,2", "--max-len", "1",
                "--n", "6", "--max-height", "7", "--depth", "1",
            ],  # not found
            ["catalog"],
        ]
        for argv in invocations:
            proc = run_km(*argv)
            assert proc.returncode == 0, (argv, proc.stderr)
            doc = json.loads(proc.stdout)
            jsonschema.validate(doc, envelope_schema)

    def test_envelope_carries_input_and_version(self, catalog_paths):
        proc = run_km("validate", catalog_paths["finite_a2"])
        doc = json.loads(proc.stdout)
        assert doc["tool"] == {"name": "km", "version": "0.1.0"}
        assert doc["input"]["matrix"] == [[2, -1], [-1, 2]]
        assert doc["command"] == "validate"
        assert doc["warnings"] == []

    def test_bounded_commands_warn(self, catalog_paths):
        proc = run_km("roots", catalog_paths["finite_a2"], "--max-height", "2")
        doc = json.loads(proc.stdout)
        assert any("bounded" in w for w in doc["warnings"])

    def test_stdin_input(self):
        proc = run_km("classify", "-", stdin="2 -3\n-3 2\n")
        assert proc.returncode == 0
        doc = json.loads(proc.stdout)
        assert doc["payload"]["components"][0]["type"] == "indefinite"

    def test_indices_are_one_based_on_the_wire(self, catalog_paths):
        payload = km_payload(
            "decompose", catalog_paths["mixed_rank3"], "--set", "2,3"
        )
        assert payload["set"] == [2, 3]
        assert payload["spherical_part"] == [2, 3]


class TestExitCodes:
    def test_invalid_matrix_is_exit_2_with_position(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("1 -1\n-1 2\n")
        proc = run_km("validate", str(bad))
        assert proc.returncode == 2
        assert "DiagonalNotTwo(1)" in proc.stderr
        assert proc.stdout == ""

    def test_missing_file_is_exit_2(self):
        proc = run_km("validate", "/nonexistent/x.json")
        assert proc.returncode == 2

    def test_bad_set_index_is_exit_2(self, catalog_paths):
        proc = run_km("decompose", catalog_paths["finite_a2"], "--set", "3")
        assert proc.returncode == 2
        assert "out of range" in proc.stderr

    def test_bad_word_letter_is_exit_2(self, catalog_paths):
        proc = run_km(
            "weyl", "word", catalog_paths["finite_a2"], "--word", "1,9"
        )
        assert proc.returncode == 2

    def test_non_prime_power_is_exit_2(self, catalog_paths):
        proc = run_km("indec", catalog_paths["finite_a2"], "--q", "6")
        assert proc.returncode == 2
        assert "prime power" in proc.stderr

    def test_non_essential_jregular_set_is_exit_2(self, catalog_paths):
        proc = run_km(
            "jregular", catalog_paths["finite_a2"], "--set", "1",
            "--max-len", "2", "--n", "2", "--max-height", "2", "--depth", "1",
        )
        assert proc.returncode == 2
        assert "not essential" in proc.stderr

    def test_unknown_catalog_entry_is_exit_2(self):
        proc = run_km("catalog", "no_such_entry")
        assert proc.returncode == 2

    def test_budget_exhaustion_is_exit_3(self, catalog_paths):
        proc = run_km(
            "roots", catalog_paths["affine_a2"], "--max-height", "40",
            "--budget", "5",
        )
        assert proc.returncode == 3
        assert "budget" in proc.stderr

    def test_closure_budget_is_exit_3(self, catalog_paths):
        proc = run_km(
            "closure", catalog_paths["affine_a2"], "--word", "1,2",
            "--depth", "9", "--budget", "10",
        )
        assert proc.returncode == 3

    def test_not_found_and_not_conjugate_are_exit_0(self, catalog_paths):
        payload = km_payload(
            "conj", catalog_paths["finite_a3"], "--from", "1,2", "--to", "1,3"
        )
        assert payload == {
            "conjugate": False,
            "from": [1, 2],
            "to": [1, 3],
            "witness_word": None,
            "moves": None,
        }
        payload = km_payload(
            "jregular", catalog_paths["affine_a1"], "--set", "1,2",
            "--max-len", "1", "--n", "6", "--max-height", "7", "--depth", "1",
        )
        assert payload == {"found": False, "set": [1, 2]}

    def test_version_flag(self):
        proc = run_km("--version")
        assert proc.returncode == 0
        assert proc.stdout.strip() == "km 0.1.0"


class TestDotOutput:
    def test_poset_dot(self, catalog_paths):
        proc = run_km("poset", catalog_paths["mixed_rank3"], "--format", "dot")
        assert proc.returncode == 0
        assert proc.stdout.startswith("digraph essential_poset {")
        assert 'label="B [W_{}]"' in proc.stdout
        assert "n0 -> n1;" in proc.stdout
        assert proc.stdout.endswith("}\n")

    def test_nerve_dot(self, catalog_paths):
        proc = run_km("nerve", catalog_paths["affine_a2"], "--format", "dot")
        assert proc.stdout.startswith("digraph nerve_faces {")
        assert proc.stdout.count("->") == 6  # 3 edges x 2 endpoints


class TestWeylCommands:
    def test_word_payload(self, catalog_paths):
        payload = km_payload(
            "weyl", "word", catalog_paths["finite_a2"], "--word", "2,1,2"
        )
        assert payload["canonical_word"] == [1, 2, 1]
        assert payload["length"] == 3
        assert payload["order"] == 2
        assert payload["support"] == [1, 2]

    def test_straight_payload(self, catalog_paths):
        payload = km_payload(
            "weyl", "straight", catalog_paths["affine_a1"],
            "--word", "1,2", "--n", "5",
        )
        assert payload["is_straight_up_to_n"] is True
        assert payload["power_lengths"] == [2, 4, 6, 8, 10]


class TestCatalogCommand:
    def test_listing(self):
        payload = km_payload("catalog")
        assert "affine_a2" in payload["names"]
        assert len(payload["names"]) == 6

    def test_entry_is_pipeable(self, tmp_path):
        proc = run_km("catalog", "affine_a2")
        assert proc.returncode == 0
        again = run_km("classify", "-", stdin=proc.stdout)
        assert again.returncode == 0
        doc = json.loads(again.stdout)
        assert doc["payload"]["components"][0]["type"] == "affine"


class TestGoldens:
    @pytest.mark.parametrize("name,entry,template", CASES, ids=[c[0] for c in CASES])
    def test_output_matches_golden(self, name, entry, template, catalog_paths):
        argv = [
            a.replace("{}", catalog_paths[entry]) if entry else a
            for a in template
        ]
        proc = run_km(*argv)
        assert proc.returncode == 0, proc.stderr
        expected = (GOLDEN_DIR / name).read_text()
        assert proc.stdout == expected

    def test_runs_are_byte_stable(self, catalog_paths):
        argv = ["report", catalog_paths["affine_a2"], "--q", "4"]
        first = run_km(*argv)
        second = run_km(*argv)
        assert first.stdout == second.stdout
        assert first.stdout.endswith("\n")

    def test_golden_envelopes_validate(self, envelope_schema):
        for name, _, _ in CASES:
            if not name.endswith(".json"):
                continue
            doc = json.loads((GOLDEN_DIR / name).read_text())
            jsonschema.validate(doc, envelope_schema)
