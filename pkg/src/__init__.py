# cyclogon - four-term polygon recurrences and cyclically symmetric polytopes
__version__ = "0.1.0"
