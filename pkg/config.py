"""
Configuration file for the Wronskian dependence certifier
Centralizes all configuration parameters
"""

import os
import re
from math import comb
from typing import Tuple

# ============================================================
# APPLICATION CONFIGURATION
# ============================================================

class Config:
    """Central configuration for the library and the CLI"""

    # Application Info
    APP_NAME = "wronski"
    APP_VERSION = "1.0.0"

    # Coefficient fields
    DEFAULT_FIELD = "Q"
    FIELD_PATTERN = r'^(Q|Fp:[0-9]+)$'

    # Exit codes of the CLI
    EXIT_INDEPENDENT = 0
    EXIT_DEPENDENT = 10
    EXIT_INCONCLUSIVE = 20
    EXIT_INPUT_ERROR = 2

    # Determinants: cofactor expansion up to this size, Bareiss above
    COFACTOR_MAX_N = 4

    # Bounded search for a shift c such that no denominator vanishes at c
    TRANSLATION_SEARCH_LIMIT = int(os.getenv('WRONSKI_TRANSLATION_LIMIT', '64'))

    # Threads used by the generalized Wronskian witness search (1 = sequential)
    WITNESS_WORKERS = int(os.getenv('WRONSKI_WITNESS_WORKERS', '1'))

    # Logging
    LOG_LEVEL = os.getenv('WRONSKI_LOG_LEVEL', 'WARNING').upper()
    LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

    # Output
    JSON_INDENT = 2

    # Family limits
    MAX_FAMILY_SIZE = 64

    @classmethod
    def working_precision(cls, n: int, max_degree: int) -> int:
        """
        Precision budget for truncated inputs.

        Large enough for the exponent sum(d_i) - C(n,2) of any leading
        monomial witness to fall inside the precision window.
        """
        return n * max(max_degree, 0) + comb(n, 2) + 1

    @classmethod
    def validate_field_string(cls, text: str) -> Tuple[bool, str]:
        """
        Validate a field description ("Q" or "Fp:<prime>")
        Returns: (is_valid, error_message)
        """
        if not text:
            return False, "Field cannot be empty"

        if not re.match(cls.FIELD_PATTERN, text.strip()):
            return False, f"Unknown field '{text}', expected 'Q' or 'Fp:<prime>'"

        return True, ""

    @classmethod
    def validate_family_size(cls, n: int) -> Tuple[bool, str]:
        """
        Validate the number of members of a family
        Returns: (is_valid, error_message)
        """
        if n < 1:
            return False, "A family needs at least one member"

        if n > cls.MAX_FAMILY_SIZE:
            return False, f"Family size cannot exceed {cls.MAX_FAMILY_SIZE}"

        return True, ""
