"""Finite involutive solutions of the Yang-Baxter equation, their braces and
multipermutation level."""

from .perm import FiniteGroup, Perm, PointSet, closure, named_group, parse_cycles
from .solution import RTable, Solution, enumerate_solutions, from_sigma_table
from .retraction import is_irretractable, mp_level, retract
from .permbrace import PermBrace
from .structbrace import StructureBrace, mp_verdict, pi_cross_check, series_lattices
from .fileformat import format_solution, load_example, load_solution, parse_solution

__version__ = "0.1.0"
