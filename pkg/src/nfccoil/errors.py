"""Exception types raised by the design modules.

Class names double as the error names printed by the command line tool.
"""


class NfcDesignError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class InnerOpeningNonPositive(NfcDesignError):
    pass


class NonPositiveFrequency(NfcDesignError):
    pass


class NonPositiveComponent(NfcDesignError):
    pass


class ZeroSeriesCapacitor(NfcDesignError):
    pass


class Untunable(NfcDesignError):
    pass


class BadRange(NfcDesignError):
    pass


class NoResonanceInRange(NfcDesignError):
    pass


class ZeroResistance(NfcDesignError):
    pass


class CoilsIntersect(NfcDesignError):
    pass
