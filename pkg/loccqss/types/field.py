from typing import Iterator

from pydantic import BaseModel, ConfigDict, Field, model_validator


class FieldParams(BaseModel):
    """
    Parameters of the Galois field GF(p^m) in polynomial-basis representation.

    Use `loccqss.gf.field_new` to build one; it fills in a built-in polynomial when none is given.

    Parameters
    ----------
    p: `int`
        Prime characteristic
    m: `int`
        Extension degree, at least 1
    irreducible_poly: `tuple[int, ...]`
        Monic degree-m polynomial over F_p, m+1 coefficients with the constant term first
    """

    model_config = ConfigDict(frozen=True)

    p: int = Field(ge=2)
    m: int = Field(ge=1)
    irreducible_poly: tuple[int, ...]

    @model_validator(mode="after")
    def validate_field(self) -> "FieldParams":
        """
        Validate the following:

        - `p` is prime.
        - `irreducible_poly` is monic of degree `m` and irreducible over F_p.
        - q = p^m does not exceed the supported ceiling.
        """
        from ..gf import check_field_params

        check_field_params(self.p, self.m, self.irreducible_poly)
        return self

    @property
    def q(self) -> int:
        return self.p**self.m

    def element(self, value: int) -> "FieldElement":
        return FieldElement(value=value, params=self)

    def elements(self) -> Iterator["FieldElement"]:
        """All q elements in value order."""
        for value in range(self.q):
            yield FieldElement(value=value, params=self)

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    def to_spec(self) -> dict:
        return {"p": self.p, "m": self.m, "poly": list(self.irreducible_poly)}

    def __str__(self):
        poly = ",".join(str(c) for c in self.irreducible_poly)
        return f"GF({self.p}^{self.m}; poly=[{poly}])"

    __repr__ = __str__


class FieldElement(BaseModel):
    """
    A single element of GF(p^m).

    The base-p digits of `value` are the polynomial-basis coordinates: digit i is the coefficient of alpha^i.
    """

    model_config = ConfigDict(frozen=True)

    value: int
    params: FieldParams

    @model_validator(mode="after")
    def validate_value(self) -> "FieldElement":
        if not 0 <= self.value < self.params.q:
            raise ValueError(
                f"Element value must lie in [0, {self.params.q}), got {self.value}."
            )
        return self

    def __str__(self):
        return str(self.value)

    __repr__ = __str__

    def __int__(self) -> int:
        return self.value

    def __add__(self, other: "FieldElement") -> "FieldElement":
        from ..gf import add

        return add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        from ..gf import sub

        return sub(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        from ..gf import mul

        return mul(self, other)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        from ..gf import div

        return div(self, other)

    def __neg__(self) -> "FieldElement":
        from ..gf import neg

        return neg(self)

    def __pow__(self, exponent: int) -> "FieldElement":
        from ..gf import power

        return power(self, exponent)

    def is_zero(self) -> bool:
        return self.value == 0
