"""polyaug: exact computation of augmentation-ideal filtrations, graded
ranks and polynomial-degree ideals for small algebraic theories."""

from .fields import GF, QQ, ZZ
from .kernels import HAVE_COMPILED, active_kernel_name

__version__ = "0.1.0"
__all__ = ["GF", "QQ", "ZZ", "HAVE_COMPILED", "active_kernel_name",
           "__version__"]
