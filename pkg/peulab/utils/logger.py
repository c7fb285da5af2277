#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Logging utilities for the peulab application.

Reports go to stdout, so every log record goes to stderr or a log file.
"""

import logging
import os
import sys
from datetime import datetime

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
CONSOLE_DATEFMT = '%H:%M:%S'
FILE_DATEFMT = '%Y-%m-%d %H:%M:%S'


def setup_logging(level='INFO', log_dir=None, stream=None):
    """
    Set up logging for the application.

    Calling it again replaces the handlers installed by the previous call.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: Directory for a timestamped log file; console only if None
        stream: Console stream; the current ``sys.stderr`` if None

    Returns:
        Path of the log file, or None
    """
    numeric_level = getattr(logging, str(level).upper(), logging.INFO)

    root = logging.getLogger()
    root.setLevel(numeric_level)
    for handler in root.handlers[:]:
        root.removeHandler(handler)
        handler.close()

    console_handler = logging.StreamHandler(stream or sys.stderr)
    console_handler.setLevel(numeric_level)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=CONSOLE_DATEFMT))
    root.addHandler(console_handler)

    if not log_dir:
        return None

    os.makedirs(log_dir, exist_ok=True)
    log_file = os.path.join(log_dir, f"peulab_{datetime.now().strftime('%Y%m%d_%H%M%S')}.log")
    file_handler = logging.FileHandler(log_file, encoding='utf-8')
    file_handler.setLevel(numeric_level)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=FILE_DATEFMT))
    root.addHandler(file_handler)

    root.info(f"Logging to file: {log_file}")
    return log_file


def get_logger(name):
    """Logger for a peulab module; pass ``__name__``."""
    return logging.getLogger(name)
