from __future__ import annotations


class EraserError(ValueError):
    pass


class SizeError(EraserError):
    pass


class ContractError(EraserError):
    pass


class ImpossibleOutcomeError(EraserError):
    pass


class IncompleteSettingsError(EraserError):
    pass


class InconsistentTableError(EraserError):
    pass


class WavelengthRangeError(EraserError):
    pass


class NoPhaseMatchingError(EraserError):
    pass


class CrystalDataError(EraserError):
    def __init__(self, message: str, path: str = "", line_no: int = 0):
        self.path = path
        self.line_no = line_no
        if path and line_no:
            message = f"{path}:{line_no}: {message}"
        elif path:
            message = f"{path}: {message}"
        super().__init__(message)


class UnknownCrystalError(EraserError):
    pass


class ConfigError(EraserError):
    def __init__(self, message: str, key: str = ""):
        self.key = key
        super().__init__(f"{key}: {message}" if key else message)


__all__ = [
    "ConfigError",
    "ContractError",
    "CrystalDataError",
    "EraserError",
    "ImpossibleOutcomeError",
    "InconsistentTableError",
    "IncompleteSettingsError",
    "NoPhaseMatchingError",
    "SizeError",
    "UnknownCrystalError",
    "WavelengthRangeError",
]
