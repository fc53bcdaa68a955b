"""Construction A lattices over totally ramified primes, coset coding and a wiretap channel simulator."""

from .errors import AlgLatticeError, InconsistencyError

__version__ = "0.1.0"
__all__ = ["AlgLatticeError", "InconsistencyError", "__version__"]
