"""
Shared test fixtures for the multiway cut system
"""
