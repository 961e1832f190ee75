"""Exception hierarchy shared across the toolkit."""


class ReadgaugeError(Exception):
    """Base class for all toolkit errors."""

    code = "Error"

    def __str__(self):
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


class MissingFile(ReadgaugeError):
    code = "MissingFile"


class MalformedRow(ReadgaugeError):
    code = "MalformedRow"


class MalformedRule(ReadgaugeError):
    code = "MalformedRule"


class BadProbabilitySum(ReadgaugeError):
    code = "BadProbabilitySum"


class UnsupportedRule(ReadgaugeError):
    code = "UnsupportedRule"


class NoParse(ReadgaugeError):
    code = "NoParse"


class EmptyKBest(ReadgaugeError):
    code = "EmptyKBest"


class MissingLexicon(ReadgaugeError):
    code = "MissingLexicon"


class SupportViolation(ReadgaugeError):
    code = "SupportViolation"


class MissingAges(ReadgaugeError):
    code = "MissingAges"


class UnknownClass(ReadgaugeError):
    code = "UnknownClass"


class DegenerateLabels(ReadgaugeError):
    code = "DegenerateLabels"


class NameCollision(ReadgaugeError):
    code = "NameCollision"


class FeatureMismatch(ReadgaugeError):
    code = "FeatureMismatch"


class LengthMismatch(ReadgaugeError):
    code = "LengthMismatch"


class TooFewSamples(ReadgaugeError):
    code = "TooFewSamples"


class SizeTooLarge(ReadgaugeError):
    code = "SizeTooLarge"


class MissingResource(ReadgaugeError):
    code = "MissingResource"


class MissingDoc(ReadgaugeError):
    code = "MissingDoc"


class DuplicateId(ReadgaugeError):
    code = "DuplicateId"


class MissingScore(ReadgaugeError):
    code = "MissingScore"
