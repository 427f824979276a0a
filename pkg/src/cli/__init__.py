"""
Spec-file parsing, command dispatch and reports.
"""
