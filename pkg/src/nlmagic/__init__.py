"""Nonlocal magic of pure fermionic Gaussian states."""
__version__ = "0.1.0"

from .errors import (ContractError, DegeneracyError, InputError, NLMagicError,  # noqa: E402
                     NumericError, ResourceError)
from .gstate import Bipartition, entanglement_entropy, entanglement_spectrum, vacuum  # noqa: E402
from .magic import canonical_form, nonlocal_bound, sre_exact  # noqa: E402

__all__ = [
    "Bipartition", "ContractError", "DegeneracyError", "InputError", "NLMagicError",
    "NumericError", "ResourceError", "canonical_form", "entanglement_entropy",
    "entanglement_spectrum", "nonlocal_bound", "sre_exact", "vacuum",
]
