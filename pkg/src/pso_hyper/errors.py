class ConfigurationError(ValueError):
    """Raised when a run or fitness configuration is inconsistent."""


class NonFiniteFitnessError(ArithmeticError):
    def __init__(self, epoch: int, particle: int, value: float):
        self.epoch = epoch
        self.particle = particle
        self.value = value
        super().__init__(
            f"non-finite fitness {value!r} at epoch {epoch}, particle {particle}"
        )
