"""Exception types shared across the package."""


class RangeError(ValueError):
    """A query exceeded the bounds a table was built for."""


class ResourceLimitError(RuntimeError):
    """A build was refused because its estimated memory exceeds the cap."""


class DistinctPrimeError(ValueError):
    """A gap witness requires two distinct primes; the pair shares one."""
