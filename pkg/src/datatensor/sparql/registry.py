"""Extension function and aggregate registry."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass


class RegistrationError(ValueError):
    pass


@dataclass(frozen=True)
class FunctionSpec:
    iri: str
    category: str
    arg_kinds: tuple[str, ...]  # "tensor" | "integer" | "numeric" | "any"
    impl: Callable

    @property
    def arity(self) -> int:
        return len(self.arg_kinds)


@dataclass(frozen=True)
class AggregateSpec:
    iri: str
    factory: Callable  # () -> accumulator with step(term) and finalize() -> Term


class FunctionRegistry:
    def __init__(self):
        self.functions: dict[str, FunctionSpec] = {}
        self.aggregates: dict[str, AggregateSpec] = {}

    def register_function(self, spec: FunctionSpec) -> None:
        if spec.iri in self.functions:
            raise RegistrationError(f"function {spec.iri} is already registered")
        self.functions[spec.iri] = spec

    def register_aggregate(self, spec: AggregateSpec) -> None:
        if spec.iri in self.aggregates:
            raise RegistrationError(f"aggregate {spec.iri} is already registered")
        self.aggregates[spec.iri] = spec

    def function(self, iri: str) -> FunctionSpec | None:
        return self.functions.get(iri)

    def aggregate(self, iri: str) -> AggregateSpec | None:
        return self.aggregates.get(iri)
