"""
Universe-level constraint solving.
"""
