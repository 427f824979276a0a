"""
Hom functors, the Yoneda embedding and the Yoneda bijection.
"""
