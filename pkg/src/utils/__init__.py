# File helpers for cyclogon.
