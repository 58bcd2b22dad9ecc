import io
import json
import tempfile
import unittest
from pathlib import Path

import numpy as np

from emin_lab.core.errors import ParseError
from emin_lab.core.models import RunManifest
from emin_lab.utils.serialization import (
    matrix_to_dict,
    parse_matrix,
    read_csv_rows,
    read_manifest,
    read_matrix,
    write_csv,
    write_manifest,
    write_matrix,
)
from emin_lab.utils.utility import file_checksum


class TestMatrixJson(unittest.TestCase):
    def test_layout_is_row_major(self):
        payload = matrix_to_dict(np.array([[1, 2j], [3, 4]]))
        self.assertEqual(payload["rows"], 2)
        self.assertEqual(payload["data"][1], [0.0, 2.0])
        self.assertEqual(payload["data"][2], [3.0, 0.0])

    def test_file_round_trip_is_exact(self):
        m = np.array([[0.1 + 0.2j, 1 / 3], [np.pi, -np.e * 1j]])
        with tempfile.TemporaryDirectory() as tmp:
            path = write_matrix(Path(tmp) / "m.json", m)
            np.testing.assert_array_equal(read_matrix(path), m)

    def test_rejects_vectors(self):
        with self.assertRaises(ValueError):
            matrix_to_dict(np.ones(3))

    def test_malformed_json_reports_location(self):
        with self.assertRaises(ParseError) as ctx:
            parse_matrix('{"rows": 1,\n "cols": 1 "data": []}', source="m.json")
        err = ctx.exception
        self.assertEqual(err.line, 2)
        self.assertIsNotNone(err.column)
        self.assertIn("m.json:2", str(err))

    def test_entry_count_mismatch(self):
        with self.assertRaises(ParseError):
            parse_matrix(json.dumps({"rows": 2, "cols": 2, "data": [[1, 0]]}))

    def test_bad_entry_reports_offset(self):
        text = json.dumps({"rows": 1, "cols": 2, "data": [[1, 0], [1, "x"]]})
        with self.assertRaises(ParseError) as ctx:
            parse_matrix(text)
        self.assertEqual(ctx.exception.offset, 1)

    def test_missing_keys(self):
        with self.assertRaises(ParseError):
            parse_matrix('{"rows": 1}')
        with self.assertRaises(ParseError):
            parse_matrix("[1, 2]")


class TestCsv(unittest.TestCase):
    def test_full_precision_floats(self):
        out = io.StringIO()
        count = write_csv(out, ["g", "k", "v"], [[0.1, 3, 1 / 3]])
        self.assertEqual(count, 1)
        self.assertEqual(out.getvalue(), "g,k,v\n0.10000000000000001,3,0.33333333333333331\n")

    def test_values_survive_text(self):
        value = -0.123456789012345678
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "x.csv"
            write_csv(path, ["v"], [[value]])
            header, rows = read_csv_rows(path)
        self.assertEqual(header, ["v"])
        self.assertEqual(float(rows[0][0]), value)

    def test_row_width_must_match_header(self):
        with self.assertRaises(ValueError):
            write_csv(io.StringIO(), ["a", "b"], [[1.0]])

    def test_identical_inputs_give_identical_bytes(self):
        rows = [[0.5, 1, -2.25e-11]]
        a, b = io.StringIO(), io.StringIO()
        write_csv(a, ["x", "y", "z"], rows)
        write_csv(b, ["x", "y", "z"], rows)
        self.assertEqual(a.getvalue(), b.getvalue())


class TestManifest(unittest.TestCase):
    def test_checksums_are_recorded(self):
        with tempfile.TemporaryDirectory() as tmp:
            data = Path(tmp) / "scatter.csv"
            data.write_text("g\n0\n", encoding="utf-8")
            manifest = RunManifest(
                command_line=["emin-lab", "fig1-scatter"],
                master_seed=1,
                parameters={"g": 0.0},
                artifact_version="0.3.0",
            )
            path = write_manifest(tmp, manifest, [data])
            loaded = read_manifest(path)
            self.assertEqual(loaded.files, {"scatter.csv": file_checksum(data)})
            self.assertEqual(loaded.master_seed, 1)
            self.assertEqual(path.name, "manifest.json")


if __name__ == "__main__":
    unittest.main()
