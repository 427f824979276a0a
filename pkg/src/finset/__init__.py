"""
The category of finite sets and its topos structure.
"""
