"""Exception hierarchy shared across the package.

Errors split into two families: mathematical refusals (the input is
well-formed but names an object the theory rejects, such as a subspace
that is not an ideal) and input errors (the job file itself is bad).
The command line maps the first family to exit code 2 and the second,
together with genuine internal failures, to exit code 1.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for every error raised deliberately by this package."""


class MathematicalRefusal(EngineError):
    """The job is syntactically fine but mathematically inadmissible."""


class NotAnIdeal(MathematicalRefusal):
    """The requested quotient subspace is not closed under the bracket."""

    def __init__(self, generator_index: int, basis_index: int):
        self.generator_index = generator_index
        self.basis_index = basis_index
        super().__init__(
            "bracket of basis vector %d with subspace generator %d "
            "leaves the subspace" % (generator_index, basis_index)
        )


class NotALieAlgebra(MathematicalRefusal):
    """A structure-constant table fails the Jacobi identity."""

    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        super().__init__(
            "Jacobi identity fails at basis triple %r" % (triple,)
        )


class InvalidSpec(MathematicalRefusal):
    """A foliation description is degenerate (dependent direction vectors)."""


class ModeKilled(EngineError):
    """A Fourier mode was requested that the constraints annihilate."""

    def __init__(self, mode: tuple[int, ...], reason: str):
        self.mode = mode
        self.reason = reason
        super().__init__("mode %r does not survive: %s" % (mode, reason))


class BoundViolated(EngineError):
    """A measured derivative sup exceeded its certified bound.

    The bounds are mathematical identities of the construction, so this
    error always indicates an implementation bug, never bad input.
    """

    def __init__(self, level: int, order: int, measured: float, bound: float):
        self.level = level
        self.order = order
        self.measured = measured
        self.bound = bound
        super().__init__(
            "derivative sup at level k=%d, order m=%d measured %.17g "
            "exceeds bound %.17g" % (level, order, measured, bound)
        )


class ParseError(EngineError):
    """A job file line could not be parsed.

    Carries the 1-based line number and the offending key when known.
    """

    def __init__(self, line_no: int, key: str | None, reason: str):
        self.line_no = line_no
        self.key = key
        self.reason = reason
        where = "line %d" % line_no
        if key:
            where += ", key %r" % key
        super().__init__("%s: %s" % (where, reason))


class ValidationError(EngineError):
    """A job file parsed but its values are inconsistent or out of range."""

    def __init__(self, key: str, reason: str):
        self.key = key
        self.reason = reason
        super().__init__("key %r: %s" % (key, reason))
