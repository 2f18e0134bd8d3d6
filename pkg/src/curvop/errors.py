class InputError(ValueError):
    """Malformed or out-of-range input (bad index, shape mismatch, bad file)."""


class ValidationError(InputError):
    """A curvature tensor failed its Hermitian-symmetry check."""
