"""Exception hierarchy shared by every module.

Each error carries the name used on the command line so the CLI can map
it to an exit code without string matching.
"""

from __future__ import annotations


class LrcError(Exception):
    """Base class for all library errors."""

    exit_code = 2


# -- fields ---------------------------------------------------------------

class NotPrime(LrcError):
    pass


class ReducibleModulus(LrcError):
    pass


class DegreeMismatch(LrcError):
    pass


class DivisionByZero(LrcError, ZeroDivisionError):
    pass


class FieldMismatch(LrcError):
    pass


class OddDegree(LrcError):
    pass


class NotAKernelElement(LrcError):
    pass


class NotIndependent(LrcError):
    pass


class TooLargeToEnumerate(LrcError):
    exit_code = 3


# -- curves / codes -------------------------------------------------------

class EmptyEvaluationSet(LrcError):
    pass


class LTooLarge(LrcError):
    pass


class RankDeficient(LrcError):
    pass


class LengthMismatch(LrcError):
    pass


# -- recovery -------------------------------------------------------------

class MalformedFiber(LrcError):
    pass


class RepeatedAbscissa(LrcError):
    pass


class NotEnoughSurvivors(LrcError):
    pass


# -- distance -------------------------------------------------------------

class TooLarge(LrcError):
    exit_code = 3


class InvalidWitness(LrcError):
    pass


class LOutOfRange(LrcError):
    pass


class FieldTooSmall(LrcError):
    pass


class PoolTooSmall(LrcError):
    pass


class NoValidMu(LrcError):
    pass


# -- bounds / cli ---------------------------------------------------------

class BadParams(LrcError):
    pass


class UnknownTable(LrcError):
    pass
