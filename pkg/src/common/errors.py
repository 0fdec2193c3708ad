from typing import ClassVar

__all__ = (
    'OkalabError',
    'DomainError',
    'UsageError',
    'ZeroFormError',
    'DuplicateHyperplaneError',
    'LengthMismatchError',
    'MalformedScalarError',
    'MalformedDocumentError',
    'DivisionByZeroError',
    'DimensionMismatchError',
    'PreconditionError',
    'PointOnArrangementError',
    'PointInBaseLocusError',
    'ZeroPointError',
    'RangeError',
    'ZeroSampleError',
    'UnderResolvedLoopError',
    'NoSamplesError',
    'CommonZeroError',
    'CommonFactorError',
    'BothZeroError',
    'NotInChartError',
    'VerificationFailedError',
    'InputNotFoundError',
    'ConfigurationError',
)


class OkalabError(ValueError):
    """
    Base of every error raised by okalab, `code` is the machine-readable identifier reported by the CLI.
    """

    code: ClassVar[str] = 'error'

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def as_dict(self) -> dict[str, str]:
        return {'error': self.code, 'message': self.message}


class DomainError(OkalabError):
    code = 'domain'


class UsageError(OkalabError):
    code = 'usage'


class ZeroFormError(DomainError):
    code = 'zero_form'


class DuplicateHyperplaneError(DomainError):
    code = 'duplicate_hyperplane'


class LengthMismatchError(DomainError):
    code = 'length_mismatch'


class MalformedScalarError(DomainError):
    code = 'malformed_scalar'


class MalformedDocumentError(DomainError):
    code = 'malformed_document'


class DivisionByZeroError(DomainError, ZeroDivisionError):
    code = 'division_by_zero'


class DimensionMismatchError(UsageError):
    code = 'dimension_mismatch'


class PreconditionError(UsageError):
    code = 'precondition'


class ConfigurationError(UsageError):
    code = 'configuration'


class PointOnArrangementError(PreconditionError):
    code = 'point_on_arrangement'


class PointInBaseLocusError(PreconditionError):
    code = 'point_in_base_locus'


class ZeroPointError(DomainError):
    code = 'zero_point'


class RangeError(DomainError):
    code = 'range'


class ZeroSampleError(DomainError):
    code = 'zero_sample'


class UnderResolvedLoopError(DomainError):
    code = 'under_resolved_loop'


class NoSamplesError(DomainError):
    code = 'no_samples'


class CommonZeroError(PreconditionError):
    code = 'common_zero'


class CommonFactorError(PreconditionError):
    code = 'common_factor'


class BothZeroError(PreconditionError):
    code = 'both_zero'


class NotInChartError(PreconditionError):
    code = 'not_in_chart'


class VerificationFailedError(DomainError):
    code = 'verification_failed'


class InputNotFoundError(DomainError):
    code = 'file_not_found'
