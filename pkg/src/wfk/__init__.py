"""wfk: exact computational algebra for wreath products, Fock spaces and McKay data.

Everything is computed over exact scalars (arbitrary-precision rationals and
cyclotomic numbers); there is no floating point anywhere in the library.
"""

__version__ = "0.1.0"

from .exact import CycNum, Rational, cyclotomic_polynomial
from .groups import FiniteGroup, builtin_group
