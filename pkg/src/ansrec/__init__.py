"""Abstract numeration systems and automata for 1-recognizable subsets of N^d."""

from .automata import Automaton, OrderedAlphabet, TupleAlphabet
from .ans import Ans, new_ans

__all__ = ["Ans", "Automaton", "OrderedAlphabet", "TupleAlphabet", "new_ans"]
__version__ = "0.1.0"
