"""Exception hierarchy. Every library error derives from :class:`NdtError`."""


class NdtError(Exception):
    pass


class ConfigError(NdtError, ValueError):
    """Malformed or out-of-range problem instance."""


class DomainError(NdtError, ValueError):
    """A formula was evaluated outside the range it is stated for."""


class NonIntegerCachePoint(DomainError):
    pass


class InfeasibleCacheSizes(DomainError):
    pass


class CacheOutOfRange(DomainError):
    pass


class RequiresEmptyEnCache(DomainError):
    pass


class ZeroFronthaul(DomainError):
    pass


class ZeroFronthaulRequired(ZeroFronthaul):
    """Some demanded content is cached at no EN but the fronthaul rate is 0."""


class UnsupportedTopology(NdtError, ValueError):
    """A benchmark formula is only stated for a specific (K_T, K_R)."""


class DimensionMismatch(NdtError, ValueError):
    pass


class OutsideHull(NdtError, ValueError):
    pass


class ScaleLimit(NdtError, ValueError):
    pass
