"""Exception hierarchy shared by every bbnet module."""


class BlackboardError(Exception):
    """Base class for all bbnet errors."""


class UnknownEntity(BlackboardError, LookupError):
    kind = "entity"

    def __init__(self, ident):
        self.ident = ident
        super().__init__(f"unknown {self.kind} id {ident!r}")


class UnknownFact(UnknownEntity):
    kind = "fact"


class UnknownRule(UnknownEntity):
    kind = "rule"


class UnknownContainer(UnknownEntity):
    kind = "container"


class EmptyRuleSide(BlackboardError, ValueError):
    pass


class OverlappingSides(BlackboardError, ValueError):
    pass


class SelfLink(BlackboardError, ValueError):
    pass


class IoFailure(BlackboardError, OSError):
    pass


class ParseFailure(BlackboardError, ValueError):
    """Malformed network or config document.

    ``where`` names the offending location, either ``line N`` for JSON syntax
    errors or a field path such as ``facts[3].value``.
    """

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


class IntegrityFailure(BlackboardError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"network violates invariants: {lines}{more}")


class InvalidConfig(BlackboardError, ValueError):
    pass


class NoContainers(BlackboardError, ValueError):
    pass


class NoPairFound(BlackboardError):
    """No dually traversable fact pair was found within the attempt bound."""


class ConditionFailed(BlackboardError):
    def __init__(self, condition, seed: int, message: str = ""):
        self.condition = condition
        self.seed = seed
        super().__init__(
            f"condition {condition} failed (seed {seed})" + (f": {message}" if message else "")
        )


class EmptyInput(BlackboardError, ValueError):
    pass
