from rest_framework.exceptions import APIException
from rest_framework import status
from django.utils.translation import gettext_lazy as _
from rest_framework.exceptions import ValidationError


class LinearAlgebraError(ValidationError):
    """
    LinearAlgebraError raised for invalid input to an exact linear algebra kernel.
    @param detail: explanation of the error
    """

    def __init__(self, detail):
        super().__init__({'Linear Algebra Error': detail})


class RootSystemError(ValidationError):
    """
    RootSystemError raised for an invalid finite type and rank pair.
    @param detail: explanation of the error
    """

    def __init__(self, detail):
        super().__init__({'Root System Error': detail})


class WeightError(ValidationError):
    """
    WeightError raised for a weight that is not dominant integral or has the wrong length.
    @param detail: explanation of the error
    """

    def __init__(self, detail):
        super().__init__({'Weight Error': detail})


class ConfigError(ValidationError):
    """
    ConfigError raised for errors in a Gaudin configuration.
    @param detail: explanation of the error, a dict keyed by the config field path
    """

    def __init__(self, detail):
        super().__init__({'Config Error': detail})


class ChainSpaceError(ValidationError):
    """
    ChainSpaceError raised when an operator does not preserve the chain space.
    @param detail: explanation of the error
    """

    def __init__(self, detail):
        super().__init__({'Chain Space Error': detail})


class DegenerateFormError(ValidationError):
    """
    DegenerateFormError raised for a degenerate invariant form (internal error).
    @param detail: explanation of the error
    """

    def __init__(self, detail):
        super().__init__({'Degenerate Form Error': detail})


class DimensionCapExceeded(APIException):
    ''' Representation larger than the configured dimension cap '''
    status_code = status.HTTP_413_REQUEST_ENTITY_TOO_LARGE
    default_detail = _('Representation dimension cap exceeded.')
    default_code = 'dimension_cap'
