"""Exception types raised across the package.

Every error derives from :class:`DCSError`; the leaf classes mirror the
failure modes of the individual operations so callers (and the CLI) can
report the offending faces or edges.
"""


class DCSError(Exception):
    """Base class for all package errors."""


# surface
class InvalidSurface(DCSError, ValueError):
    pass


class NonManifold(InvalidSurface):
    pass


class Disconnected(InvalidSurface):
    pass


class DegenerateFace(InvalidSurface):
    pass


# geometry
class NonPositiveLength(DCSError, ValueError):
    pass


class NotEmbeddable(DCSError, ValueError):
    pass


# structures
class InvalidRadicand(DCSError, ValueError):
    pass


class NoRealLength(DCSError, ValueError):
    pass


class TanhOutOfRange(DCSError, ValueError):
    pass


class BranchFailure(DCSError, ValueError):
    pass


class FaceNotEmbeddable(DCSError, ValueError):
    def __init__(self, faces):
        self.faces = list(faces)
        super().__init__(f"faces not embeddable: {self.faces}")


class CompatibilityViolated(DCSError, ValueError):
    def __init__(self, faces, residual, reason="residual"):
        self.faces = list(faces)
        self.residual = residual
        self.reason = reason
        super().__init__(
            f"compatibility violated ({reason}) on faces {self.faces}, "
            f"max residual {residual:.3e}"
        )


class PerturbationInvalid(DCSError, ValueError):
    pass


class InvalidStructure(DCSError, ValueError):
    """Conformal data that breaks its own invariants (symmetry, cocycle, tags)."""


# gauge
class WrongFamily(DCSError, ValueError):
    pass


class NotSimplyConnected(DCSError, ValueError):
    pass


class InconsistentCocycle(DCSError, ValueError):
    pass


class DomainViolation(DCSError, ValueError):
    pass


class UnsupportedSignPattern(DCSError, ValueError):
    pass


# analysis
class ProviderFailure(DCSError, RuntimeError):
    pass


class NotClassifiable(DCSError, ValueError):
    pass


class InconsistentConstant(NotClassifiable):
    pass


class WrongGeometry(DCSError, ValueError):
    pass


# solver
class InfeasibleTarget(DCSError, ValueError):
    pass


class StepDegenerate(DCSError, RuntimeError):
    pass


class MaxIterations(DCSError, RuntimeError):
    pass
