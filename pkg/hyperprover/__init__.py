"""hyperprover: decision procedures for abelian logic and Lukasiewicz logic"""

__version__ = "0.3.0"
__description__ = "Hypersequent, terminating, labelled and single-sequent provers for A and Ł"

from hyperprover.cli import main

__all__ = ["main", "__version__"]
