"""
Finite computational category theory engine
"""
