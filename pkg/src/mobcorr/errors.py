"""Exception hierarchy shared across the package."""


class MobcorrError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(MobcorrError):
    """Invalid configuration or argument values (CLI exit code 2)."""


class CapacityError(MobcorrError):
    """Requested computation exceeds the configured memory/size budget (CLI exit code 3)."""


class CacheError(MobcorrError):
    """Base class for sieve cache file problems."""


class CacheFormatError(CacheError):
    """Bad magic bytes or malformed header."""


class CacheVersionError(CacheError):
    """Cache file written by an incompatible format version."""


class CacheChecksumError(CacheError):
    """CRC mismatch on the value block."""


class CacheTruncatedError(CacheError):
    """File shorter than the header promises."""


class GridResolutionError(MobcorrError):
    """Phase grid too coarse for the requested polynomial degree."""


class CertificateUnavailableError(MobcorrError):
    """Bernstein certificate needs M > pi*N; the profile's grid is too small."""
