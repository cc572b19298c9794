"""Clones and clonoids of Boolean functions: minors, classification and verification."""
from .boolfn import BoolFn, lambda_fn, parse_fn
from .classes import parse_class
from .engine import (
    check_left_stable, check_right_stable, clonoid_closure, constant_adjunction_check,
    enumerate_clonoids, largest_stabilizing,
)
from .fnset import FnSet
from .minorder import class_label, leq_minor_bruteforce, minor_poset
from .postlattice import get_clone

__all__ = [
    "BoolFn", "FnSet", "lambda_fn", "parse_fn", "parse_class", "get_clone", "class_label",
    "leq_minor_bruteforce", "minor_poset", "check_left_stable", "check_right_stable",
    "clonoid_closure", "constant_adjunction_check", "enumerate_clonoids", "largest_stabilizing",
]
