"""
Test suite for the notched square isoprofile toolkit
"""
