from typing import Iterable, Sequence

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .field import FieldElement, FieldParams


class GFVector(BaseModel):
    """
    A vector over F_q, stored as raw element values sharing one `FieldParams`.

    Parameters
    ----------
    field: `FieldParams`
        The field every entry lives in
    values: `tuple[int, ...]`
        Entry values in [0, q)
    """

    model_config = ConfigDict(frozen=True)

    field: FieldParams
    values: tuple[int, ...]

    @model_validator(mode="after")
    def validate_values(self) -> "GFVector":
        q = self.field.q
        if any(not 0 <= v < q for v in self.values):
            raise ValueError(f"Vector entries must lie in [0, {q}), got {self.values}.")
        return self

    @classmethod
    def from_elements(cls, elems: Sequence[FieldElement]) -> "GFVector":
        if not elems:
            raise ValueError("Cannot infer the field of an empty element list.")
        from ..gf import _same_field

        field = elems[0].params
        for e in elems[1:]:
            _same_field(elems[0], e)
        return cls(field=field, values=tuple(e.value for e in elems))

    @classmethod
    def zeros(cls, field: FieldParams, length: int) -> "GFVector":
        return cls(field=field, values=(0,) * length)

    @property
    def elems(self) -> list[FieldElement]:
        return [self.field.element(v) for v in self.values]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> FieldElement:
        return self.field.element(self.values[i])

    def is_zero(self) -> bool:
        return not any(self.values)

    def __str__(self):
        return f"({','.join(str(v) for v in self.values)})"

    __repr__ = __str__


class GFMatrix(BaseModel):
    """
    A dense row-major matrix over F_q.

    Parameters
    ----------
    field: `FieldParams`
        The field every entry lives in
    rows: `int`
        Number of rows, at least 1
    cols: `int`
        Number of columns, at least 1
    entries: `tuple[tuple[int, ...], ...]`
        Row-major grid of entry values in [0, q)
    """

    model_config = ConfigDict(frozen=True)

    field: FieldParams
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    entries: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def validate_shape(self) -> "GFMatrix":
        """
        Validate the following:

        - exactly `rows` rows of exactly `cols` entries each.
        - every entry lies in [0, q).
        """
        if len(self.entries) != self.rows or any(
            len(row) != self.cols for row in self.entries
        ):
            raise ValueError(
                f"Matrix must have {self.rows}x{self.cols} entries, got rows of lengths "
                f"{[len(row) for row in self.entries]}."
            )
        q = self.field.q
        if any(not 0 <= v < q for row in self.entries for v in row):
            raise ValueError(f"Matrix entries must lie in [0, {q}).")
        return self

    @classmethod
    def from_rows(cls, field: FieldParams, rows: Iterable[Sequence[int]]) -> "GFMatrix":
        entries = tuple(tuple(int(v) for v in row) for row in rows)
        return cls(
            field=field,
            rows=len(entries),
            cols=len(entries[0]) if entries else 0,
            entries=entries,
        )

    @classmethod
    def from_text(cls, field: FieldParams, text: str) -> "GFMatrix":
        """Parse rows as lines of whitespace-separated element integers."""
        rows = [line.split() for line in text.strip().splitlines() if line.strip()]
        return cls.from_rows(field, rows)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)

    def __getitem__(self, index: tuple[int, int]) -> FieldElement:
        i, j = index
        return self.field.element(self.entries[i][j])

    def row(self, i: int) -> GFVector:
        return GFVector(field=self.field, values=self.entries[i])

    def column(self, j: int) -> GFVector:
        return GFVector(field=self.field, values=tuple(row[j] for row in self.entries))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __str__(self):
        return f"GFMatrix({self.rows}x{self.cols} over {self.field})"

    __repr__ = __str__
