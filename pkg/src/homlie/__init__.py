"""Exact computations with Hom-Lie algebras and filiform classification."""
