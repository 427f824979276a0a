"""
Finite categories, functors, natural transformations and their constructions.
"""
