"""Finite-group centralizer, conjugacy-class and class-graph toolkit."""

from centlab.api_objects import CheckResult, VerificationReport
from centlab.config import AppConfig, load_config
from centlab.constants import APP_NAME

__all__ = [
    "APP_NAME",
    "AppConfig",
    "CheckResult",
    "VerificationReport",
    "__version__",
    "load_config",
]
__version__ = "0.1.0"
