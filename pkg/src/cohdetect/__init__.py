"""Coherence detection without tomography, multi-copy witnesses, and
witness-based lower bounds on the robustness of coherence."""

__version__ = "0.1.0"

from .states import DensityMatrix, dephase, is_incoherent, make_state  # noqa: E402
from .witness import Witness, expectation, normalize  # noqa: E402

__all__ = ["DensityMatrix", "Witness", "dephase", "expectation", "is_incoherent",
           "make_state", "normalize", "__version__"]
