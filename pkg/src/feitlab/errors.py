"""Exception hierarchy. Every error raised by feitlab derives from FeitlabError."""


class FeitlabError(Exception):
    pass


# permutation groups
class PermutationParseError(FeitlabError, ValueError):
    pass


class DegreeMismatch(FeitlabError, ValueError):
    pass


class ClosureExceedsCap(FeitlabError):
    pass


class NotPrime(FeitlabError, ValueError):
    pass


class NotSubgroup(FeitlabError, ValueError):
    pass


class NotNormal(FeitlabError, ValueError):
    pass


# cyclotomic arithmetic
class NotCoprime(FeitlabError, ValueError):
    pass


class CycloParseError(FeitlabError, ValueError):
    pass


# character tables
class LiftFailure(FeitlabError):
    """Modular lifting produced an impossible value. Always a bug, never rounded away."""


class CapExceeded(FeitlabError):
    pass


class GroupMismatch(FeitlabError, ValueError):
    pass


class NotACharacter(FeitlabError, ValueError):
    pass


# invariants
class DecompositionFailure(FeitlabError):
    pass


class NotSolvable(FeitlabError, ValueError):
    pass


class NotNormalizing(FeitlabError, ValueError):
    pass


# harness
class CorpusError(FeitlabError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DuplicateName(CorpusError):
    pass
