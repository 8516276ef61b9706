class WorkbenchException(Exception):
    '''
    An exception that occured while using
    the workbench API.
    '''
    def __init__(self, info=None):
        super().__init__(info)
        self.info = info


class InvalidParameterException(WorkbenchException):
    '''
    A precondition of a workbench operation is violated.
    The parameter attribute names the offending argument,
    the value attribute stores what was given.
    '''
    def __init__(self, parameter, value, info=None):
        if info is None:
            info = "Invalid value for {0}: {1}".format(parameter, value)
        super().__init__(info)
        self.parameter = parameter
        self.value = value


class DomainViolationException(InvalidParameterException):
    '''
    A summand left the domain of the analytic expression,
    e.g. a non-positive base under a fractional power.
    '''
    pass


class PrecisionCapException(WorkbenchException):
    '''
    A certified floor could not be decided below the configured
    precision cap. The value attribute stores the argument,
    the digits attribute the last working precision tried.
    '''
    def __init__(self, value, digits, info=None):
        if info is None:
            info = "Precision cap of {0} digits hit while deciding [{1}]".format(digits, value)
        super().__init__(info)
        self.value = value
        self.digits = digits


class MemoryGuardException(WorkbenchException):
    '''
    A table would exceed the configured memory budget.
    '''
    def __init__(self, requested, budget, info=None):
        if info is None:
            info = "Table of {0} entries exceeds the budget of {1}".format(requested, budget)
        super().__init__(info)
        self.requested = requested
        self.budget = budget
