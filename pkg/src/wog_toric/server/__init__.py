"""Toric engine and MCP tool server."""
