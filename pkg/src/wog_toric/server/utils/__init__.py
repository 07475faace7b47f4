"""Formatting helpers shared by the CLI and the MCP tools."""
