import logging
import threading
import unittest
from concurrent.futures import ThreadPoolExecutor
from unittest.mock import patch

from rich.logging import RichHandler

from emin_lab.utils import log


class TestLogging(unittest.TestCase):
    def setUp(self):
        self.logger = logging.getLogger("emin_lab")
        saved_handlers = list(self.logger.handlers)
        saved_level = self.logger.level
        self.logger.handlers = [h for h in self.logger.handlers if not isinstance(h, RichHandler)]

        def restore():
            self.logger.handlers = saved_handlers
            self.logger.setLevel(saved_level)

        self.addCleanup(restore)
        patcher = patch.object(log, "_configured", False)
        patcher.start()
        self.addCleanup(patcher.stop)

    def _rich_handlers(self) -> int:
        return sum(isinstance(h, RichHandler) for h in self.logger.handlers)

    def test_concurrent_first_use_attaches_one_handler(self):
        workers = 16
        barrier = threading.Barrier(workers)

        def first_use(k: int) -> logging.Logger:
            barrier.wait()
            return log.get_logger(f"worker{k}")

        with ThreadPoolExecutor(max_workers=workers) as pool:
            loggers = list(pool.map(first_use, range(workers)))
        self.assertEqual(self._rich_handlers(), 1)
        self.assertEqual(loggers[3].name, "emin_lab.worker3")

    def test_reconfiguring_only_changes_the_level(self):
        log.configure_logging("INFO")
        log.configure_logging("DEBUG")
        self.assertEqual(self._rich_handlers(), 1)
        self.assertEqual(self.logger.level, logging.DEBUG)
        self.assertFalse(self.logger.propagate)


if __name__ == "__main__":
    unittest.main()
