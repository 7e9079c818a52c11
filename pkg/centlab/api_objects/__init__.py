"""Typed objects for verification reports."""

from centlab.api_objects.types import CheckResult, VerificationReport

__all__ = ["CheckResult", "VerificationReport"]
