import logging
import os

from dotenv import load_dotenv

load_dotenv()


def _env_int(name, default):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return int(raw)


def _env_float(name, default):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return float(raw)


def _env_flag(name, default):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    return raw.strip().lower() not in ("0", "false", "no", "off")


class Config:
    # Search budgets
    THREADS = _env_int('SRN_THREADS', 1)
    MAX_COLORINGS = _env_int('SRN_MAX_COLORINGS', 5_000_000)
    TIMEOUT = _env_float('SRN_TIMEOUT', 600.0)
    SYMMETRY_BREAKING = _env_flag('SRN_SYMMETRY_BREAKING', True)

    # Enumeration / canonical form caps
    ENUM_MAX_EDGES = _env_int('SRN_ENUM_MAX_EDGES', 8)
    ENUM_MAX_VERTICES = _env_int('SRN_ENUM_MAX_VERTICES', 8)
    CANON_MAX_VERTICES = _env_int('SRN_CANON_MAX_VERTICES', 24)

    # Formula evaluation
    L_CROSS_CHECK = _env_flag('SRN_L_CROSS_CHECK', True)

    # Random-graph harness
    SEED = _env_int('SRN_SEED', 20240229)

    LOG_LEVEL = os.getenv('SRN_LOG_LEVEL', 'WARNING')

    @classmethod
    def describe(cls):
        """Effective settings, for the debug banner."""
        return {
            'threads': cls.THREADS,
            'max_colorings': cls.MAX_COLORINGS,
            'timeout': cls.TIMEOUT,
            'symmetry_breaking': cls.SYMMETRY_BREAKING,
            'enum_max_edges': cls.ENUM_MAX_EDGES,
            'enum_max_vertices': cls.ENUM_MAX_VERTICES,
            'canon_max_vertices': cls.CANON_MAX_VERTICES,
            'l_cross_check': cls.L_CROSS_CHECK,
            'seed': cls.SEED,
            'log_level': cls.LOG_LEVEL,
        }


def configure_logging(level=None):
    """Send log records to stderr; stdout carries the reports."""
    level = (level or Config.LOG_LEVEL).upper()
    root = logging.getLogger()
    for handler in list(root.handlers):
        if getattr(handler, '_srn_handler', False):
            root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    handler._srn_handler = True
    root.addHandler(handler)
    root.setLevel(level)
    return root
