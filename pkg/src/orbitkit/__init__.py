"""Exact combinatorics of low-dimensional coadjoint orbits for nilradicals
of classical Borel subalgebras: root systems, classification strings,
character counting, and brute-force cross-checks over prime fields."""

__version__ = "0.1.0"
