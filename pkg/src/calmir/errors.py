"""Exception types shared across the package."""


class ScenarioError(ValueError):
    """Raised for any defect in a scenario file, with a 1-based position."""

    def __init__(self, message, line=1, col=1):
        self.message = message
        self.line = int(line)
        self.col = int(col)
        super().__init__(f"line {self.line}, col {self.col}: {message}")


class ConvergenceError(RuntimeError):
    """A sum or quadrature failed to converge within its configured budget."""


class UnsupportedConfigurationError(ValueError):
    """A material combination outside the model's domain of validity."""
