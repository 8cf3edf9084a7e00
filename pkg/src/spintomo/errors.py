"""Exception types shared across the package."""


class NonPhysicalStateError(ValueError):
    """An input failed the physicality checks for a quantum state.

    The optional ``report`` attribute holds the validation record that
    triggered the rejection, when one is available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class AdmissibilityError(NonPhysicalStateError):
    """A table or probability set does not describe any physical state."""
