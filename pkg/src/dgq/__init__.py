"""Weak Hopf algebras attached to finite double groupoids."""
__version__ = "0.1.0"
