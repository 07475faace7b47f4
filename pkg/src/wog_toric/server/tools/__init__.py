"""Command dispatch shared by the CLI and the MCP tools."""
