#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import copy
import logging
import logging.config
import os

SIMPLE_FMT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
COLOR_FMT = "%(log_color)s%(levelname)-8s%(reset)s %(bold)s%(name)s%(reset)s: %(message)s"
DATE_FMT = "%Y-%m-%d %H:%M:%S"
DEFAULT_LOG_LEVEL = os.environ.get("ROTATING_DIRAC_LOG_LEVEL", "WARNING").upper()

LOG_COLORS = {
    'DEBUG': 'cyan',
    'INFO': 'green',
    'WARNING': 'yellow',
    'ERROR': 'red',
    'CRITICAL': 'red,bg_white',
}

LOG_CFG = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'colorFormatter': {
            '()': 'colorlog.ColoredFormatter',
            'format': COLOR_FMT,
            'log_colors': LOG_COLORS,
        },
    },
    'handlers': {
        'consoleHandler': {
            'class': 'logging.StreamHandler',
            'level': DEFAULT_LOG_LEVEL,
            'formatter': 'colorFormatter',
            'stream': 'ext://sys.stderr',
        }
    },
    'loggers': {
        'rotating_dirac': {'level': DEFAULT_LOG_LEVEL, 'handlers': ['consoleHandler']},
    }
}


def configure_logging(level=DEFAULT_LOG_LEVEL):
    """Install the coloured console handler on the package logger.

    Library modules log through ``getLogger(__name__)`` and propagate to the ``rotating_dirac`` logger configured here.

    Parameters
    ----------
    level : str or int, optional
        Logging level applied to the handler and the package logger.
        Defaults to the ``ROTATING_DIRAC_LOG_LEVEL`` environment variable, or ``'WARNING'``.

    Returns
    -------
    logging.Logger
        The package logger.

    Examples
    --------
    >>> from rotating_dirac.log import configure_logging
    >>> logger = configure_logging('INFO')
    >>> logger.info("Solving the characteristic equation...")
    """
    if isinstance(level, str):
        level = level.upper()
    cfg = copy.deepcopy(LOG_CFG)
    cfg['handlers']['consoleHandler']['level'] = level
    cfg['loggers']['rotating_dirac']['level'] = level
    logging.config.dictConfig(cfg)
    return logging.getLogger('rotating_dirac')


def get_file_logger(name, path, level=logging.INFO):
    """Add a file handler writing `name`.log under `path`; return the logger and the file name."""
    if isinstance(level, str):
        level = level.upper()
    os.makedirs(path, exist_ok=True)
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)

    # Create a file handler
    fname = os.path.join(path, f'{name}.log')
    file_handler = logging.FileHandler(fname, mode='w')
    file_handler.setLevel(level)

    # Create a formatter and add it to the handler:
    file_handler.setFormatter(logging.Formatter(SIMPLE_FMT, datefmt=DATE_FMT))

    logger.addHandler(file_handler)
    return logger, fname
