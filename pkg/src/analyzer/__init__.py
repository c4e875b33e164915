# cyclogon - recurrence, polygon and polytope analyzers
