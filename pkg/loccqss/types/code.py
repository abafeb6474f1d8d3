from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from .field import FieldParams
from .linalg import GFMatrix


class LinearCode(BaseModel):
    """
    An [n, k, d]_q linear code held as its k x n generator matrix.

    Parameters
    ----------
    field: `FieldParams`
        The code alphabet F_q
    G: `GFMatrix`
        Generator matrix; must have full row rank
    """

    model_config = ConfigDict(frozen=True)

    field: FieldParams
    G: GFMatrix

    @model_validator(mode="after")
    def validate_generator(self) -> "LinearCode":
        """
        Validate the following:

        - `G` lives in `field`.
        - rank(G) = k, i.e. the rows are linearly independent (which also forces n >= k).
        """
        from ..exceptions import FieldMismatch, RankDeficientGenerator
        from ..gflinalg import rank

        if self.G.field != self.field:
            raise FieldMismatch(
                f"Generator lives in {self.G.field}, code declared over {self.field}."
            )
        r = rank(self.G)
        if r != self.G.rows:
            raise RankDeficientGenerator(
                f"Generator matrix must have full row rank {self.G.rows}, got rank {r}."
            )
        return self

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    @property
    def q(self) -> int:
        return self.field.q

    def to_spec(self) -> dict:
        """Code specification in the JSON file layout."""
        return {"field": self.field.to_spec(), "generator": [list(r) for r in self.G.entries]}

    def __str__(self):
        return f"LinearCode([{self.n},{self.k}]_{self.q} over {self.field})"

    __repr__ = __str__


class SubsetReport(BaseModel):
    """
    Whether the complement A of a player subset B is LOCC-assisting for B.

    Subsets hold 0-based player indices in ascending order.

    Parameters
    ----------
    n: `int`
        Number of players
    k: `int`
        Code dimension
    subset_B: `tuple[int, ...]`
        The recovering subset
    rank_GB: `int`
        Rank of the generator restricted to the columns of B
    is_assisted: `bool`
        True iff rank_GB == k
    """

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    k: int = Field(ge=1)
    subset_B: tuple[int, ...]
    rank_GB: int = Field(ge=0)
    is_assisted: bool

    @model_validator(mode="after")
    def validate_criterion(self) -> "SubsetReport":
        if self.is_assisted != (self.rank_GB == self.k):
            raise ValueError(
                f"is_assisted={self.is_assisted} contradicts rank(G_B)={self.rank_GB}, k={self.k}."
            )
        return self

    @computed_field
    @property
    def subset_A(self) -> tuple[int, ...]:
        members = set(self.subset_B)
        return tuple(i for i in range(self.n) if i not in members)

    @computed_field
    @property
    def quantum_channels(self) -> int:
        """Pairwise quantum links needed inside B."""
        size = len(self.subset_B)
        return size * (size - 1) // 2

    @computed_field
    @property
    def classical_channels(self) -> int:
        """Classical links from every A player to every B player."""
        return len(self.subset_A) * len(self.subset_B)


class CodeAnalysis(BaseModel):
    """
    Summary of a code: dimensions, distance computed two ways and the MDS flag.
    """

    n: int
    k: int
    q: int
    distance_weight: int
    distance_rank: int
    is_mds: bool
    recovery_threshold: int
    min_assisted_size: int | None = None
    optimal_subsets: int | None = None
