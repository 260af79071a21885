"""Exception hierarchy.

Every error carries a stable ``code`` string; reports and the CLI use the code,
not the class name, so renaming a class does not break JSON consumers.
"""

from __future__ import annotations


class DimstatError(Exception):
    code = "Error"


# quantity calculus
class DimensionMismatch(DimstatError):
    code = "DimensionMismatch"


class ScaleViolation(DimstatError):
    code = "ScaleViolation"


class ScaleKindMismatch(DimstatError):
    code = "ScaleKindMismatch"


class ImaginaryResult(DimstatError):
    code = "ImaginaryResult"


class DivisionByZero(DimstatError, ZeroDivisionError):
    code = "DivisionByZero"


class UnknownUnit(DimstatError, KeyError):
    code = "UnknownUnit"

    def __str__(self) -> str:
        return Exception.__str__(self)


class RegistryError(DimstatError):
    code = "RegistryError"


# model parsing
class ModelSyntaxError(DimstatError):
    """Parse failure with a 1-based source position."""

    code = "SyntaxError"

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line = line
        self.col = col
        self.message = message
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + message)


class UnknownDimension(ModelSyntaxError):
    code = "UnknownDimension"


class DuplicateName(ModelSyntaxError):
    code = "DuplicateName"


class DatasetError(DimstatError):
    code = "DatasetError"


class RaggedRows(DatasetError):
    code = "RaggedRows"


class MissingColumn(DatasetError):
    code = "MissingColumn"


# homogeneity
class HomogeneityError(DimstatError):
    """A dimensional-typing failure at a specific expression node."""

    code = "HomogeneityError"

    def __init__(self, message: str, node=None):
        self.node = node
        super().__init__(message)


class InhomogeneousSum(HomogeneityError):
    code = "InhomogeneousSum"


class InhomogeneousEquation(HomogeneityError):
    code = "InhomogeneousEquation"


class TranscendentalOfDimensioned(HomogeneityError):
    code = "TranscendentalOfDimensioned"


class SymbolicPowerOfDimensioned(HomogeneityError):
    code = "SymbolicPowerOfDimensioned"


class DimensionedExponent(HomogeneityError):
    code = "DimensionedExponent"


class UnresolvedParameter(HomogeneityError):
    code = "UnresolvedParameter"


class Underdetermined(DimstatError):
    code = "Underdetermined"

    def __init__(self, params):
        self.params = tuple(params)
        super().__init__("dimension not determined for: " + ", ".join(self.params))


class Inconsistent(DimstatError):
    code = "Inconsistent"


class MissingResponse(DimstatError):
    code = "MissingResponse"


# Pi engine
class RankDeficientRepeatingSet(DimstatError):
    code = "RankDeficientRepeatingSet"


class NoVariables(DimstatError):
    code = "NoVariables"


class VariableListMismatch(DimstatError):
    code = "VariableListMismatch"


class NegativeBaseForFractionalPower(DimstatError):
    code = "NegativeBaseForFractionalPower"


# invariance
class ShapeMismatch(DimstatError):
    code = "ShapeMismatch"


class SingularR1(DimstatError):
    code = "SingularR1"


class RankDeficientPrimaries(DimstatError):
    code = "RankDeficientPrimaries"


class NonTransitivePrimaryAction(DimstatError):
    code = "NonTransitivePrimaryAction"


class InvalidFamily(DimstatError):
    code = "InvalidFamily"


# statistics
class DegenerateSample(DimstatError):
    code = "DegenerateSample"


class NonpositivePi(DimstatError):
    code = "NonpositivePi"


class FewerThanTwoRows(DimstatError):
    code = "FewerThanTwoRows"


class NonpositiveMagnitude(DimstatError):
    code = "NonpositiveMagnitude"
