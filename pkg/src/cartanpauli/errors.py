"""Exception types shared across the package."""


class CartanError(Exception):
    """Base class for all errors raised by cartanpauli."""


class DimensionError(CartanError, ValueError):
    """Operands live in spaces of different size, or an index is out of range."""


class ParityError(CartanError, ValueError):
    """A graded operation received an operand without a definite Grassmann parity."""


class ParseError(CartanError, ValueError):
    """Malformed polynomial, rational or form text."""


class MissingInputError(CartanError, ValueError):
    """A builder needs a Hamiltonian or a SUSY parameter that was not supplied."""
