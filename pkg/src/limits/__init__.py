"""
Cones, limits by search, finite-set (co)limits and the complete-preorder theorem.
"""
