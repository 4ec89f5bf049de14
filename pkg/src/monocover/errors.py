"""Shared exception types.

Exact solvers refuse oversized instances (SizeGuardError) instead of
approximating; structured preconditions fail with the violated clause named
(PreconditionError); the two hypothesis-violation outcomes carry their
combinatorial witnesses so callers can re-verify them independently.
"""


class SizeGuardError(RuntimeError):
    """An exact search refused an instance larger than its configured guard."""


class PreconditionError(ValueError):
    """A structured input violated a precondition; the message names the clause."""


class MatchingNumberViolation(Exception):
    """The input hypergraph has matching number above the promised bound.

    Carries the witness: a tuple of pairwise-disjoint edges.
    """

    def __init__(self, matching, message="matching-number hypothesis violated"):
        self.matching = tuple(matching)
        super().__init__(f"{message}: {len(self.matching)} pairwise-disjoint edges found")


class IndependenceViolation(Exception):
    """The input graph / metric family violates the independence-number premise.

    Carries the witness: nu+1 vertices that are pairwise non-adjacent
    (equivalently, pairwise farther than 1 in every metric).
    """

    def __init__(self, vertices, message="independence hypothesis violated"):
        self.vertices = tuple(sorted(vertices))
        super().__init__(f"{message}: independent set {list(self.vertices)}")


class SequenceUnsoundError(RuntimeError):
    """A sequence that claimed certification failed a soundness obligation."""


class EngineAssertionError(RuntimeError):
    """An internal transference invariant failed; this indicates an engine bug."""


class UnsupportedInstanceError(RuntimeError):
    """No stable sequence is available for the requested (colours, independence)."""


class CertificateError(RuntimeError):
    """A serialized certificate failed independent re-validation."""
