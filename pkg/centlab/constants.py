"""Package-wide constants and defaults."""

from __future__ import annotations

APP_NAME = "centlab"

ENV_LOG_LEVEL = "CENTLAB_LOG_LEVEL"

DEFAULT_LOG_LEVEL = "INFO"

DEFAULT_MAX_ORDER = 20_000
DEFAULT_DENSE_TABLE_LIMIT = 4096
DEFAULT_FULL_SCAN_LIMIT = 512

DEFAULT_ISO_ORDER_BOUND = 10_000
DEFAULT_ISO_BUDGET = 10**7
DEFAULT_GRAPH_VERTEX_BOUND = 1000

HEISENBERG_MAX_MODULUS = 128
EXTENSION_MAX_ORDER = 30_000

DEFAULT_PRIMES = (2, 3)
EXTENDED_PRIMES = (5,)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INCONSISTENT = 3
EXIT_IO = 4

QUOTIENT_ABELIAN = "abelian"
QUOTIENT_NONABELIAN = "nonabelian"
