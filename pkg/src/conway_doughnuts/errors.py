"""Exception hierarchy shared by the library and the CLI."""


class DoughnutError(Exception):
    """Base class for domain errors (CLI exit code 4)."""


class ConstraintViolation(DoughnutError):
    pass


class DegenerateAngle(DoughnutError):
    pass


class UnrealizableShape(DoughnutError):
    pass


class DisconnectedSpec(DoughnutError):
    pass


class InvalidSpec(DoughnutError):
    pass


class UnknownName(DoughnutError):
    pass


class OverlappingFans(DoughnutError):
    pass


class ApexCollision(DoughnutError):
    pass


class BranchCutCrossing(DoughnutError):
    pass


class HoleAbsent(DoughnutError):
    pass


class NotRealizable(DoughnutError):
    pass


class EmptyScene(DoughnutError):
    pass
