"""Exception hierarchy. Every error raised by the library derives from EtfkitError."""


class EtfkitError(Exception):
    """Base class for all etfkit errors."""


# -- finite fields ----------------------------------------------------------

class FieldConstructionError(EtfkitError):
    """A finite field could not be constructed from the given parameters."""


class NonPrimeCharacteristic(FieldConstructionError):
    pass


class SizeLimitExceeded(FieldConstructionError):
    pass


class NotADivisor(EtfkitError):
    pass


class NotASubfield(EtfkitError):
    pass


# -- designs ----------------------------------------------------------------

class OddPointCount(EtfkitError):
    pass


class NotResolvableParameters(EtfkitError):
    pass


class DesignFormatError(EtfkitError):
    pass


# -- unimodular matrices ----------------------------------------------------

class UnsupportedHadamardOrder(EtfkitError):
    pass


class RowOutOfRange(EtfkitError):
    pass


class IndexOutOfRange(EtfkitError):
    pass


# -- frames -----------------------------------------------------------------

class NotResolvable(EtfkitError):
    pass


class SimplexShapeMismatch(EtfkitError):
    pass


class BasisShapeMismatch(EtfkitError):
    pass


class GroupOrderMismatch(EtfkitError):
    pass


class GroupMismatch(EtfkitError):
    pass


class NotTight(EtfkitError):
    pass


class FrameFormatError(EtfkitError):
    pass


# -- metrics ----------------------------------------------------------------

class TooFewColumns(EtfkitError):
    pass


class NotUnitNorm(EtfkitError):
    pass


class BadDimensions(EtfkitError):
    pass


class ShapeMismatch(EtfkitError):
    pass


class SearchBudgetExceeded(EtfkitError):
    pass


class EnumerationBudgetExceeded(EtfkitError):
    pass


# -- binary codes -----------------------------------------------------------

class NotRealConstantAmplitude(EtfkitError):
    pass


class NotSelfComplementary(EtfkitError):
    pass


class TooFewWords(EtfkitError):
    pass


class CodeFormatError(EtfkitError):
    pass
