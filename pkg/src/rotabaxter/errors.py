"""Exception hierarchy.

Every validator raises a subclass of :class:`AlgebraError` carrying a
``witness``: the smallest (lexicographically first) tuple of indices at
which the checked identity fails.
"""

from __future__ import annotations


class AlgebraError(Exception):
    """A structure or map failed one of its defining identities."""

    def __init__(self, message: str, witness: tuple | None = None):
        self.witness = witness
        if witness is not None:
            message = f"{message} at {witness}"
        super().__init__(message)


# groups

class GroupAxiomError(AlgebraError):
    pass


class NotClosed(GroupAxiomError):
    pass


class NotAssociative(GroupAxiomError):
    pass


class NoIdentity(GroupAxiomError):
    pass


class NoInverse(GroupAxiomError):
    pass


class NotHom(AlgebraError):
    def __init__(self, name: str, witness: tuple | None = None, message: str | None = None):
        self.name = name
        super().__init__(message or f"{name} is not a homomorphism", witness)


class NotBijective(AlgebraError):
    def __init__(self, name: str, witness: tuple | None = None):
        self.name = name
        super().__init__(f"{name} is not bijective", witness)


class NotAction(AlgebraError):
    """A family of permutations is not an action by automorphisms."""


class ActionMismatch(AlgebraError):
    pass


class NotSubgroup(AlgebraError):
    pass


class NotNormal(AlgebraError):
    pass


class NotAutomorphism(AlgebraError):
    pass


# 2-groups and crossed modules

class GroupoidAxiomFailure(AlgebraError):
    def __init__(self, condition: str, witness: tuple | None = None):
        self.condition = condition
        super().__init__(f"groupoid axiom '{condition}' fails", witness)


class InterchangeFailure(AlgebraError):
    pass


class NotGroupoidMorphism(AlgebraError):
    def __init__(self, condition: str, witness: tuple | None = None):
        self.condition = condition
        super().__init__(f"not a groupoid morphism: '{condition}' fails", witness)


class CompositionActionFailure(AlgebraError):
    """phi(p*p')(q*q') differs from phi(p)q * phi(p')q'."""


class Peiffer1Failure(AlgebraError):
    pass


class Peiffer2Failure(AlgebraError):
    pass


class NotDerivation(AlgebraError):
    pass


class SquareFailure(AlgebraError):
    pass


class EquivarianceFailure(AlgebraError):
    pass


class NotSubTwoGroup(AlgebraError):
    pass


# operators

class RRBFailure(AlgebraError):
    """The relative Rota-Baxter identity fails at a pair."""


class ComponentFailure(AlgebraError):
    def __init__(self, component: str, inner: AlgebraError):
        self.component = component
        self.inner = inner
        super().__init__(f"component {component}: {inner}")
        self.witness = inner.witness


class MixedIdentityFailure(AlgebraError):
    pass


class NotAdjointAction(AlgebraError):
    pass


class InvariantViolation(AlgebraError):
    """A property that holds by a theorem failed on concrete data."""


class CocycleFailure(AlgebraError):
    pass


class MixedFailure(AlgebraError):
    pass


class BraidFailure(AlgebraError):
    pass


class FunctorialityFailure(AlgebraError):
    def __init__(self, condition: str, witness: tuple | None = None):
        self.condition = condition
        super().__init__(f"functoriality '{condition}' fails", witness)


# Lie algebras

class NotLieAlgebra(AlgebraError):
    pass


class IdentityFailure(AlgebraError):
    pass


# search and I/O

class SearchBudgetExceeded(Exception):
    def __init__(self, nodes: int, found: int = 0):
        self.nodes = nodes
        self.found = found
        super().__init__(f"search budget exhausted after {nodes} nodes ({found} solutions so far)")


class ParseError(Exception):
    pass
