from __future__ import annotations

from typing import Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ExtensionPayload(BaseModel):
    """``mult_table[i][j][k]`` is the coefficient of e_k in e_i e_j (ints or "p/q" strings)."""

    model_config = ConfigDict(extra="ignore")
    degree: int = Field(ge=1, le=8)
    mult_table: list[list[list[Union[int, str]]]]

    @model_validator(mode="after")
    def table_shape(self) -> ExtensionPayload:
        d = self.degree
        if len(self.mult_table) != d or any(
            len(row) != d or any(len(cell) != d for cell in row) for row in self.mult_table
        ):
            raise ValueError(f"mult_table must have shape {d}x{d}x{d}")
        return self
