from .core_tt import TournamentTree, build, make_elements, validate
from .ltt_core import LTT, build_ltt, layer_number, team_of, validate_ltt
from .ltt_query import PsortIterator, make_iterator, psort_ltt
from .ltt_update import LTTEngine, changeval_ltt, cut_ltt, link_ltt
from .tt_dynamic import TTEngine, changeval_tt, cut_tt, link_tt, psort_tt

__all__ = [
    "LTT",
    "LTTEngine",
    "PsortIterator",
    "TTEngine",
    "TournamentTree",
    "build",
    "build_ltt",
    "changeval_ltt",
    "changeval_tt",
    "cut_ltt",
    "cut_tt",
    "layer_number",
    "link_ltt",
    "link_tt",
    "make_elements",
    "make_iterator",
    "psort_ltt",
    "psort_tt",
    "team_of",
    "validate",
    "validate_ltt",
]
