"""Exception types shared across the toolchain."""


class QuadbedError(Exception):
    """Base class for all toolchain errors."""


class PbfParseError(QuadbedError, ValueError):
    """Malformed polynomial text; carries the 1-based line number."""

    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class MissingVariableError(QuadbedError, KeyError):
    """An assignment does not cover a required variable."""

    def __init__(self, variable):
        self.variable = variable
        super().__init__(f"assignment missing variable {variable!r}")


class DegreeCapError(QuadbedError, ValueError):
    """Input polynomial exceeds the supported degree."""


class UnknownGadgetError(QuadbedError, KeyError):
    def __init__(self, key, available):
        self.key = key
        self.available = sorted(available)
        super().__init__(f"unknown gadget {key!r}; available: {', '.join(self.available)}")


class EnumerationBoundError(QuadbedError, ValueError):
    """A brute-force enumeration would exceed its supported size."""


class SynthesisBoundError(QuadbedError, ValueError):
    """Synthesis problem outside the supported template/aux bounds."""


class PatternResolutionError(QuadbedError, RuntimeError):
    """No edge-removal pattern admits an exact gadget within bounds."""


class CatalogPatternMissingError(QuadbedError, RuntimeError):
    """A pattern-dependent catalog graph has no persisted fixture."""

    def __init__(self, name):
        super().__init__(
            f"catalog pattern {name!r} is not resolved; run `quadbed synth --resolve-patterns` first"
        )


class EmbedLimitError(QuadbedError, ValueError):
    """Embedding limits outside the supported range."""


class SearchBudgetExceededError(QuadbedError, RuntimeError):
    """The embedding search hit its node budget before finishing."""


class InvalidEmbeddingError(QuadbedError, ValueError):
    """An embedding cannot carry the requested polynomial."""
