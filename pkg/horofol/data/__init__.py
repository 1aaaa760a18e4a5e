"""Bundled group specifications"""
