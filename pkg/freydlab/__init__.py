"""
FreydLab

Exact computations in free abelian categories of diagrams, universal homology
categories of finite categories and universal relative homology categories,
over the integers, the rationals, Z/n and prime fields.
"""

__version__ = "0.1.0"
