from __future__ import annotations

from typing import Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class GroupPayload(BaseModel):
    """Group JSON: ``table[i][j]`` is the product of labels[i] and labels[j], by index or label."""

    model_config = ConfigDict(extra="ignore")
    labels: list[str] = Field(min_length=1)
    identity: str = Field(min_length=1)
    table: list[list[Union[int, str]]] = Field(min_length=1)
    name: str = ""

    @field_validator("labels")
    @classmethod
    def labels_unique(cls, v: list[str]) -> list[str]:
        if any(not label.strip() for label in v):
            raise ValueError("labels must be non-empty")
        if len(set(v)) != len(v):
            raise ValueError("labels must be unique")
        return v

    @model_validator(mode="after")
    def table_square(self) -> GroupPayload:
        n = len(self.labels)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError(f"table must be {n}x{n}")
        if self.identity not in self.labels:
            raise ValueError("identity must be one of the labels")
        return self


class SubgroupPayload(BaseModel):
    model_config = ConfigDict(extra="ignore")
    members: list[str] = Field(min_length=1)
    name: str = ""

    @field_validator("members")
    @classmethod
    def members_unique(cls, v: list[str]) -> list[str]:
        if len(set(v)) != len(v):
            raise ValueError("members must be unique")
        return v
