"""Preferential and preferential-discriminative consequence relations over
classical, FOUR and J3 semantics, with executable checks of their
representation conditions."""

from .choice import (
    ChoiceFunction, PreferenceStructure, Report, choice_from_structure,
    is_coherent, is_cp, is_dp, is_locally_monotonic, is_smooth, mu_sharp,
)
from .conditions import (
    ConditionReport, check_condition, check_KLM, check_system_P, compute_F,
    compute_G, compute_H, compute_M_layers, synth_beta,
)
from .consequence import DISCRIMINATIVE, PLAIN, ConsequenceRelation, induce
from .formula import And, Atom, Formula, Not, Or, ParseError, parse, render
from .modeltheory import CapExceeded, Fingerprint, Space, check_assumptions
from .semantics import Kind, Structure, TruthValue

__version__ = "0.1.0"
