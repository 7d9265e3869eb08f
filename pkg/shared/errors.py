# ============================================================================
# LatticeChoose - Error hierarchy
# ============================================================================


class LatticeChooseError(Exception):
    """Base class for every error raised by the solver packages"""


class InputError(LatticeChooseError):
    """Inputs are malformed or do not describe the same vertex set"""


class PreconditionError(LatticeChooseError):
    """An operation was called outside its stated preconditions"""


class RatioGateError(PreconditionError):
    """a/b < 5/2: the handle-decomposition argument does not apply"""


class DegenerateExcessError(PreconditionError):
    """e = a - 2b is zero, Even(2b/e) is undefined"""


class StructuralViolation(LatticeChooseError):
    """A structural assertion about triangle-free lattice graphs failed"""


class OracleResourceError(LatticeChooseError):
    """The exact oracle exceeded its transition budget"""


class ExtensionFailure(LatticeChooseError):
    """A precoloring extension step failed inside solve()"""

    def __init__(self, message, steps=None):
        super().__init__(message)
        self.steps = list(steps or [])
