"""Exception hierarchy shared across the toolkit."""


class HeatctxError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(HeatctxError):
    """Matrix or subsystem dimensions are incompatible."""


class NumericsError(HeatctxError):
    """A numerical routine failed to converge or produced invalid output."""


class ParamError(HeatctxError):
    """A parameter is outside its admissible range."""


class NotAStateError(HeatctxError):
    """A candidate density matrix fails positivity/trace/hermiticity checks."""


class SupportError(HeatctxError):
    """Relative entropy requested with supp(rho) not contained in supp(sigma)."""


class NonThermalMarginalsError(HeatctxError):
    """Marginals of the supplied state are not thermal at the declared betas."""


class DecompositionError(HeatctxError):
    """No CPTP stochastic-reversibility decomposition exists for the request."""


class ConfigError(HeatctxError):
    """Scenario configuration is invalid; message carries the offending field."""
