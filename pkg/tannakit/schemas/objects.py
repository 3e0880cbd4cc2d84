from __future__ import annotations

from typing import Union

from pydantic import BaseModel, ConfigDict, Field, field_validator


class TriplePayload(BaseModel):
    """A triple (X, Y, f) of the quotient category; x and y name battery representations."""

    model_config = ConfigDict(extra="ignore")
    x: str = Field(min_length=1)
    y: str = Field(min_length=1)
    f: list[list[Union[int, str]]]

    @field_validator("f")
    @classmethod
    def rectangular(cls, v: list[list[Union[int, str]]]) -> list[list[Union[int, str]]]:
        if len({len(row) for row in v}) > 1:
            raise ValueError("f must be rectangular")
        return v
