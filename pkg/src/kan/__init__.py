"""
Pointwise Kan extensions and their universal-property checks.
"""
