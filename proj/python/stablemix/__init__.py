"""One-sided stable, Mittag-Leffler, Linnik and Lamperti laws."""

from ._core import *  # noqa: F401,F403
