"""Exception types raised by the toolkit."""


class QltsError(Exception):
    """Base class for all errors raised by qlts."""


class AlphabetMismatch(QltsError):
    pass


class NondeterministicInput(QltsError):
    pass


class NameCollision(QltsError):
    pass


class UnknownLabel(QltsError):
    pass


class OutputOverlap(QltsError):
    def __init__(self, labels):
        self.labels = frozenset(labels)
        super().__init__(f"output alphabets overlap on {sorted(self.labels)}")


class NotAnOutput(QltsError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"{label!r} is not an output label")


class DeltaNotHideable(QltsError):
    def __init__(self):
        super().__init__("the quiescence label 'delta' cannot be hidden")


class DivergenceIntroduced(QltsError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__("hiding creates a tau-cycle through " + " -> ".join(self.cycle))


class NotInputEnabled(QltsError):
    pass


class PreconditionViolated(QltsError):
    def __init__(self, rule, witness):
        self.rule = rule
        self.witness = witness
        super().__init__(f"precondition {rule} violated: {witness!r}")


class ParseError(QltsError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class ValidationFailed(QltsError):
    def __init__(self, report):
        self.report = report
        super().__init__("validation failed:\n" + report.format())
