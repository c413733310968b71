"""Join-meet ideals of finite lattices: Groebner bases, Hilbert series and Betti tables."""
from .betti import BettiTable, betti_table, invariants_report
from .groebner import Ideal, ResourceLimit, buchberger
from .hilbert import HilbertSeries, hilbert_series_ideal
from .joinmeet import join_meet_ideal, lk_suite, main_theorem_verifier, retract_check, section1_suite
from .kernels import BACKEND
from .lattice import Lattice, LatticeError, birkhoff, boolean, chain, diamond, lk, load_lattice

__version__ = "0.1.0"
