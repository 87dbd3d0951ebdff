"""Exception hierarchy.

Everything raised on bad input derives from :class:`ActError`; resource
limits derive from :class:`ResourceError` so the CLI can map them to a
separate exit code.
"""


class ActError(ValueError):
    """Invalid input or failed validation."""


class ResourceError(ActError):
    """A configured size or search budget was exceeded."""


class NotIdentity(ActError):
    def __init__(self, i):
        super().__init__(f"identity law fails at element {i}")
        self.i = i


class NotAssociative(ActError):
    def __init__(self, i, j, k):
        super().__init__(f"associativity fails at ({i}, {j}, {k})")
        self.triple = (i, j, k)


class IdentityAxiom(ActError):
    def __init__(self, a):
        super().__init__(f"a*1 != a at act element {a}")
        self.a = a


class AssociativityAxiom(ActError):
    def __init__(self, a, s, t):
        super().__init__(f"(a*s)*t != a*(st) at ({a}, {s}, {t})")
        self.triple = (a, s, t)


class TableShape(ActError):
    pass


class EmptySeed(ActError):
    def __init__(self):
        super().__init__("seed set is empty")


class MixedMonoids(ActError):
    def __init__(self, msg="acts are over different monoids"):
        super().__init__(msg)


class BadEmbedding(ActError):
    pass


class NotASubact(ActError):
    pass


class TargetNotInClass(ActError):
    pass


class TooLarge(ResourceError):
    def __init__(self, size, cap):
        super().__init__(f"object of size {size} exceeds materialization cap {cap}")
        self.size = size
        self.cap = cap


class CapExceeded(ResourceError):
    pass
