"""
Monte Carlo Errors
"""


class CalibrationError(RuntimeError):
    """Raised when a panel cannot support the factor-model calibration"""


class UnknownScenarioError(KeyError):
    """Raised for a DGP id missing from the scenario catalog"""

    def __init__(self, dgp_id: str, known):
        super().__init__(dgp_id)
        self.dgp_id = dgp_id
        self.known = list(known)

    def __str__(self) -> str:
        return f"Unknown DGP id {self.dgp_id!r}; choose from {', '.join(self.known)}"
