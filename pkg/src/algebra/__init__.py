"""
Algebras and coalgebras of endofunctors.
"""
