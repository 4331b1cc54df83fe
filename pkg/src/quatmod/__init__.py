"""Exact and numeric tools for unitary groups over definite quaternion algebras.

Modules: ``qalg`` (algebra and matrices), ``groups`` (group membership and
coset machinery), ``symspace`` (symmetric space models), ``doubling``
(diagonal embeddings), ``lfun`` (characters, L-values, Gamma factors) and
``eis`` (Eisenstein Fourier coefficients at the special point).
"""
__version__ = "0.1.0"

from .qalg import MatQuat, Quat, QuatAlgebra  # noqa: E402

__all__ = ["MatQuat", "Quat", "QuatAlgebra", "__version__"]
