"""Generators, the property harness, and counterexample search."""
from .gen import *  # noqa: F401,F403
from .gen import __all__ as _gen_all
from .lemmas import *  # noqa: F401,F403
from .lemmas import __all__ as _lemmas_all
from .search import *  # noqa: F401,F403
from .search import __all__ as _search_all

__all__ = list(_gen_all) + list(_lemmas_all) + list(_search_all)
