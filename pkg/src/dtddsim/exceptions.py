"""Exception types shared across the simulator."""


class ConfigurationError(ValueError):
    """Invalid or inconsistent simulation configuration."""


class SingularChannelError(RuntimeError):
    """Compound channel matrix is rank deficient beyond tolerance.

    Raised by the precoder when the smallest singular value falls below
    1e-12 of the largest. The sweep harness records the snapshot as failed
    instead of producing garbage powers.
    """
