// Keeps the oracle library non-empty.
