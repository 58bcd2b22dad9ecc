import tempfile
import unittest
from pathlib import Path

from emin_lab.config import DEFAULT_SEED, RunSettings, load_config_file, resolve_settings


class TestSettings(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)
        self.dir = Path(self._tmp.name)

    def _config(self, text: str) -> Path:
        path = self.dir / "emin.env"
        path.write_text(text, encoding="utf-8")
        return path

    def test_defaults(self):
        settings = resolve_settings()
        self.assertEqual(settings, RunSettings())
        self.assertEqual(settings.seed, DEFAULT_SEED)

    def test_file_values_are_coerced(self):
        overrides = load_config_file(self._config("EMIN_LAB_SEED=42\nEMIN_LAB_BETA=0.5\nEMIN_LAB_ENSEMBLE=pure\n"))
        self.assertEqual(overrides, {"seed": 42, "beta": 0.5, "ensemble": "pure"})

    def test_cli_beats_file(self):
        path = self._config("EMIN_LAB_SEED=42\nEMIN_LAB_THREADS=3\n")
        settings = resolve_settings(path, seed=7, threads=None)
        self.assertEqual(settings.seed, 7)
        self.assertEqual(settings.threads, 3)

    def test_unknown_key(self):
        with self.assertRaises(ValueError) as ctx:
            load_config_file(self._config("EMIN_LAB_COLOR=blue\n"))
        self.assertIn("EMIN_LAB_COLOR", str(ctx.exception))

    def test_bad_value(self):
        with self.assertRaises(ValueError):
            load_config_file(self._config("EMIN_LAB_FIELD_DIM=three\n"))


if __name__ == "__main__":
    unittest.main()
