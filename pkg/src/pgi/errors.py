"""Exception hierarchy. Everything raised on bad input derives from PGIError."""


class PGIError(ValueError):
    pass


class MalformedTable(PGIError):
    """Raw table is not square or has entries outside 1..n."""


class NotLatin(PGIError):
    pass


class NoIdentity(PGIError):
    pass


class NotAssociative(PGIError):
    def __init__(self, witness):
        a, b, c = witness
        super().__init__(f"not associative: ({a}*{b})*{c} != {a}*({b}*{c})")
        self.witness = witness


class NotNested(PGIError):
    pass


class NotGenerating(PGIError):
    pass


class BadParameters(PGIError):
    pass


class BadPermutation(PGIError):
    pass


class NotSeriesIso(PGIError):
    pass


class MalformedGraph(PGIError):
    pass


class NoCompositionSeries(PGIError):
    """Group has no series with prime-order factors (it is not solvable)."""


class InternalContradiction(RuntimeError):
    """A graph isomorphism restricted to group elements failed verification."""
