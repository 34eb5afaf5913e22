"""Desk-scale workbench for subshifts of finite type on groups.

Subpackages:

* :mod:`hypertile.grouptool` -- presentations, shortlex rewriting, word acceptors, growth
* :mod:`hypertile.shift` -- charts, atlases, nearest-neighbour recoding, pattern search
* :mod:`hypertile.wang` -- Wang tiles, Turing machine compilation, the Robinson set
* :mod:`hypertile.shelling` -- shortlex shellings and horofunctions
* :mod:`hypertile.aperiodic` -- divergence graphs, populations, matchings
"""

__version__ = "0.1.0"
