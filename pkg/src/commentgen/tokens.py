"""Provider-neutral token accounting.

Every budget decision in the pipeline (AST condensation, prompt assembly,
multi-pass planning) uses the same chars/4 approximation so the numbers
stay comparable across stages.
"""

import math

CHARS_PER_TOKEN = 4


def estimate_tokens(text: str, chars_per_token: int = CHARS_PER_TOKEN) -> int:
    """Estimate the token count of ``text`` as ceil(len/chars_per_token)."""
    if not text:
        return 0
    return math.ceil(len(text) / chars_per_token)
