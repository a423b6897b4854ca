"""Exception hierarchy.

Every error raised by the library derives from :class:`StarspecError`.  The
``exit_code`` class attribute is what the command line front end returns when
the error escapes a subcommand.
"""


class StarspecError(Exception):
    """Base error.  ``context`` is an optional (module, operation) pair naming the origin."""

    exit_code = 4

    def __init__(self, *args, context=None):
        super().__init__(*args)
        self.context = context


class InputError(StarspecError):
    exit_code = 2


class InvalidDomain(InputError):
    pass


class NotStarlike(InputError):
    pass


class InvalidArgument(InputError, ValueError):
    pass


class Unsupported(InputError):
    pass


class OutOfDomain(InputError):
    pass


class InconsistentMap(InputError):
    pass


class QuadratureTooCoarse(StarspecError):
    pass


class ToleranceNotMet(StarspecError):
    pass


class SolverFailure(StarspecError):
    pass


class VerificationFailure(StarspecError):
    exit_code = 3


class ReproductionFailure(VerificationFailure):
    pass


class StatisticalFailure(VerificationFailure):
    pass
