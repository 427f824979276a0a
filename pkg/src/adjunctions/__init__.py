"""
Adjunctions in hom, unit-counit and universal-arrow form.
"""
