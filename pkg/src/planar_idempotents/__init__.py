"""Exact idempotent counts for planar diagram monoids."""
