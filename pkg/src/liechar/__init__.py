"""liechar: exact computations with root data, endoscopic triples, twisted
tori, and characters of rank-1 finite groups of Lie type.

Everything that decides a verdict is computed in exact arithmetic (integers,
fractions, cyclotomic numbers). Floating point never decides anything.
"""

__version__ = "0.1.0"
