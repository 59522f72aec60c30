from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    order_cap: int = 2**20  # largest field order we will allocate tables for
    range_cap: int = 10_000  # default upper limit for batch runs
    naive_cap: int = 200  # naive clique oracle refuses larger graphs
    poly_cap: int = 2_000  # interpolation check is O(p^2)
    exhaustive_qo_cap: int = 200  # quasi-orthogonality checked over all pairs below this


DEFAULT = Config()
