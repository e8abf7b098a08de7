"""Default budgets for the exhaustive computations."""

from dataclasses import dataclass


@dataclass(frozen=True)
class Budgets:
    #: max number of augmentation-one candidates when enumerating V(KG)
    enumeration: int = 2**20
    #: max number of coefficient vectors examined by the bounded ZG search
    unit_search: int = 10**7
    #: max length of the [T, G, ..., G] chain for structured groups
    chain_steps: int = 64
    #: exponent bound N for the Z^2 independence certificate
    independence_bound: int = 5


DEFAULT_BUDGETS = Budgets()
