"""Constraint aggregation for linear Diophantine systems and solution counting."""

from .aggregation import (
    AggregationMatrix,
    DiophantineSystem,
    Kind,
    aggregate_bounded,
    aggregate_bounded_explicit,
    aggregate_general,
    aggregate_pointed,
    aggregate_strong,
    aggregate_weak,
    lower_bound_witness,
)
from .counting import KnapsackEquation, count_dp, count_spectral, count_system
from .exact_linalg import Matrix
from .oracle import certify_strong, enumerate_solutions

__all__ = [
    "AggregationMatrix",
    "DiophantineSystem",
    "Kind",
    "KnapsackEquation",
    "Matrix",
    "aggregate_bounded",
    "aggregate_bounded_explicit",
    "aggregate_general",
    "aggregate_pointed",
    "aggregate_strong",
    "aggregate_weak",
    "certify_strong",
    "count_dp",
    "count_spectral",
    "count_system",
    "enumerate_solutions",
    "lower_bound_witness",
]
