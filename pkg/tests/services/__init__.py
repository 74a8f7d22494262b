"""
Tests for service modules
"""
