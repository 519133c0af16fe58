# -*- coding: utf-8 -*-
# Typed errors raised across jamdof; JamDof.py maps them to exit codes


class Error(Exception):
    exit_code = 1


class ArgumentError(Error, ValueError):
    exit_code = 2


class DistributionError(ArgumentError):
    pass


class UnsupportedDimensionError(Error):
    exit_code = 2


class PreconditionError(Error):
    exit_code = 2


class DegenerateMarginalError(Error):
    exit_code = 3

    def __init__(self, receiver, message=None):
        self.receiver = receiver
        Error.__init__(self, message or
                       'receiver %d is never unjammed (marginal 0)' % (receiver + 1))

    def __reduce__(self):
        return (self.__class__, (self.receiver, str(self)))


class StarvationError(Error):
    exit_code = 5

    def __init__(self, receiver, slots, message=None, trial=None):
        self.receiver = receiver
        self.slots = slots
        self.trial = trial
        self._message = message or \
            'receiver %d starved after %d slots' % (receiver + 1, slots)
        Error.__init__(self, self._message)

    def __str__(self):
        if self.trial is None:
            return self._message
        return '%s (trial %d)' % (self._message, self.trial)

    def __reduce__(self):
        # survive the trip back from a worker process
        return (self.__class__, (self.receiver, self.slots, self._message, self.trial))


class NumericError(Error):
    exit_code = 1
