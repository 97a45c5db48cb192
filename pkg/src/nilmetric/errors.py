"""Exception types shared across the package."""


class NilmetricError(Exception):
    """Base class for precondition failures."""


class DegenerateCenter(NilmetricError):
    def __init__(self, msg="center degenerate: the j-map, Ricci and splitting "
                 "constructions require a non-degenerate center"):
        super().__init__(msg)


class NotComplement(NilmetricError):
    pass


class NotTwoStep(NilmetricError):
    pass


class NotBiInvariant(NilmetricError):
    def __init__(self, msg="metric is not ad-invariant"):
        super().__init__(msg)


class NotSolvable(NilmetricError):
    pass


class DegenerateMetric(NilmetricError):
    pass


class IrreducibleFactorizationIncomplete(NilmetricError):
    pass


class UnsupportedInput(NilmetricError):
    pass
